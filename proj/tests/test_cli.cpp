// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end runs of the lgimap binary: subcommands, JSON-line reports,
// exit codes and the committed golden digests. The binary path arrives via
// the LGIMAP_CLI environment variable set by CTest.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>

#include <json.hpp>

#include "core/pfm.hpp"
#include "core/png_io.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace lgimap;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string cli() {
    const char* env = std::getenv("LGIMAP_CLI");
    REQUIRE_MESSAGE(env != nullptr, "LGIMAP_CLI not set");
    return env;
}

RunResult run(const std::string& args) {
    const std::string cmd = cli() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "lgimap_cli_tests";
    fs::create_directories(dir);
    return dir;
}

json first_report(const std::string& output) {
    const size_t nl = output.find('\n');
    return json::parse(output.substr(0, nl == std::string::npos ? output.size() : nl));
}

} // namespace

TEST_CASE("gen-scene is deterministic and writes complete triples") {
    const fs::path dir = work_dir();
    const std::string out_a = (dir / "suite_a").string();
    const std::string out_b = (dir / "suite_b").string();
    const RunResult a = run("gen-scene --seed 0 --count 3 --out " + out_a + " --size 128");
    const RunResult b = run("gen-scene --seed 0 --count 3 --out " + out_b + " --size 128");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const json ra = first_report(a.output);
    const json rb = first_report(b.output);
    CHECK(ra["command"] == "gen-scene");
    CHECK(ra["seed"] == 0);
    REQUIRE(ra["outputs"].size() == 9); // 3 x (config, depth, mask)
    // digests match across runs file-by-file
    for (auto& [path, digest] : ra["outputs"].items()) {
        const std::string twin =
            out_b + path.substr(out_a.size());
        CHECK(rb["outputs"][twin] == digest);
    }
    for (int i = 0; i < 3; ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "scene_%03d.json", i);
        CHECK(fs::exists(dir / "suite_a" / name));
    }
}

TEST_CASE("gen-scene count zero writes an empty manifest") {
    const fs::path dir = work_dir();
    const RunResult r = run("gen-scene --seed 1 --count 0 --out " + (dir / "empty").string());
    CHECK(r.exit_code == 0);
    const json rep = first_report(r.output);
    CHECK(rep["outputs"].empty());
}

TEST_CASE("gen-scene digests match the committed goldens") {
    const char* golden_dir = std::getenv("LGIMAP_GOLDEN_DIR");
    REQUIRE_MESSAGE(golden_dir != nullptr, "LGIMAP_GOLDEN_DIR not set");
    const fs::path golden_path = fs::path(golden_dir) / "gen_scene_seed0.json";
    REQUIRE_MESSAGE(fs::exists(golden_path), "golden fixture missing");
    std::ifstream in(golden_path);
    const json golden = json::parse(in);

    const fs::path dir = work_dir();
    const std::string out = (dir / "golden_check").string();
    const RunResult r = run("gen-scene --seed 0 --count 3 --out " + out + " --size 256");
    REQUIRE(r.exit_code == 0);
    const json rep = first_report(r.output);
    REQUIRE(rep["outputs"].size() == golden["outputs"].size());
    for (auto& [path, digest] : golden["outputs"].items()) {
        const std::string produced = out + path.substr(path.find_last_of('/'));
        REQUIRE_MESSAGE(rep["outputs"].contains(produced), "missing " << produced);
        CHECK_MESSAGE(rep["outputs"][produced] == digest, "digest drift for " << produced);
    }
}

TEST_CASE("lgi nested sample counts keep extremes monotone") {
    const fs::path dir = work_dir();
    const std::string out = (dir / "mono").string();
    REQUIRE(run("gen-scene --seed 2 --count 1 --out " + out + " --size 128").exit_code == 0);
    const std::string depth = out + "/depth_000.pfm";
    const std::string scene = out + "/scene_000.json";
    REQUIRE(run("lgi " + depth + " " + scene + " --out " + out + "/n8 --n 8").exit_code == 0);
    REQUIRE(run("lgi " + depth + " " + scene + " --out " + out + "/n16 --n 16").exit_code == 0);
    auto [h8, m8] = read_pfm(out + "/n8_lgi.pfm");
    auto [h16, m16] = read_pfm(out + "/n16_lgi.pfm");
    const Grid<double> v8 = read_mask_png(out + "/n8_valid.png");
    for (int y = 0; y < m8.height(); ++y) {
        for (int x = 0; x < m8.width(); ++x) {
            if (v8.at(x, y) == 0.0) continue;
            CHECK(m16.at(x, y, 0) <= m8.at(x, y, 0) + 1e-6f); // c1 never increases
            CHECK(m16.at(x, y, 1) >= m8.at(x, y, 1) - 1e-6f); // c2 never decreases
        }
    }
}

TEST_CASE("lgi reports shape mismatches with exit code 2") {
    const fs::path dir = work_dir();
    const std::string out = (dir / "mismatch").string();
    REQUIRE(run("gen-scene --seed 3 --count 1 --out " + out + " --size 128").exit_code == 0);
    // depth of the wrong size for the scene config
    Grid<float> small(16, 16, 1, 1.0f);
    write_pfm(out + "/small.pfm", small);
    const RunResult r =
        run("lgi " + out + "/small.pfm " + out + "/scene_000.json --out " + out + "/bad");
    CHECK(r.exit_code == 2);
    CHECK(run("lgi " + out + "/nonexistent.pfm " + out + "/scene_000.json --out " + out + "/x")
              .exit_code == 2);
}

TEST_CASE("eval fixture and degenerate reporting") {
    const fs::path dir = work_dir();
    // hand-counted confusion fixture: IoU 1/3, BER 0.5
    Grid<double> pred(2, 2), gt(2, 2);
    pred.at(0, 0) = 1;
    pred.at(1, 0) = 1;
    gt.at(0, 0) = 1;
    gt.at(0, 1) = 1;
    const std::string pred_path = (dir / "pred.png").string();
    const std::string gt_path = (dir / "gt.png").string();
    write_mask_png(pred_path, pred);
    write_mask_png(gt_path, gt);
    const RunResult r = run("eval " + pred_path + " " + gt_path);
    REQUIRE(r.exit_code == 0);
    const json rep = first_report(r.output);
    CHECK(rep["metrics"]["iou"] == doctest::Approx(1.0 / 3.0));
    CHECK(rep["metrics"]["ber"] == doctest::Approx(0.5));

    // identical masks: IoU 1, BER 0
    const RunResult same = run("eval " + gt_path + " " + gt_path);
    const json srep = first_report(same.output);
    CHECK(srep["metrics"]["iou"] == doctest::Approx(1.0));
    CHECK(srep["metrics"]["ber"] == doctest::Approx(0.0));

    // all-empty masks: degenerate metrics surface as "undefined", exit 0
    Grid<double> zero(2, 2);
    const std::string zero_path = (dir / "zero.png").string();
    write_mask_png(zero_path, zero);
    const RunResult degen = run("eval " + zero_path + " " + zero_path);
    REQUIRE(degen.exit_code == 0);
    const json drep = first_report(degen.output);
    CHECK(drep["metrics"]["iou"] == "undefined");
    CHECK(drep["metrics"]["ber"] == "undefined");
}

TEST_CASE("compose single input copies the image bytes") {
    const fs::path dir = work_dir();
    Grid<float> img(6, 4, 3);
    for (size_t i = 0; i < img.size(); ++i) img.data()[i] = static_cast<float>(i) * 0.125f;
    const std::string in_path = (dir / "one.pfm").string();
    const std::string out_path = (dir / "one_out.pfm").string();
    write_pfm(in_path, img);
    const RunResult r = run("compose " + in_path + " --out " + out_path);
    REQUIRE(r.exit_code == 0);
    std::ifstream a(in_path, std::ios::binary), b(out_path, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);

    // adding a zero image changes nothing
    Grid<float> zero(6, 4, 3, 0.0f);
    const std::string zero_path = (dir / "zero.pfm").string();
    write_pfm(zero_path, zero);
    const std::string sum_path = (dir / "sum.pfm").string();
    REQUIRE(run("compose " + in_path + " " + zero_path + " --out " + sum_path).exit_code == 0);
    auto [h, sum] = read_pfm(sum_path);
    CHECK(sum == img);

    Grid<float> other(3, 3, 3, 0.0f);
    const std::string other_path = (dir / "other.pfm").string();
    write_pfm(other_path, other);
    CHECK(run("compose " + in_path + " " + other_path + " --out " + sum_path).exit_code == 2);
}

TEST_CASE("bench reports thread-invariant digests") {
    const RunResult r = run("bench --size 64 --n 8 --repeat 1 --threads 1 --threads 2");
    REQUIRE(r.exit_code == 0);
    const json rep = first_report(r.output);
    CHECK(rep["digest_invariant"] == true);
    REQUIRE(rep["runs"].size() == 2);
    CHECK(rep["runs"][0]["digest"] == rep["runs"][1]["digest"]);
    for (const auto& run_entry : rep["runs"])
        CHECK(run_entry["pixel_samples_per_s"].get<double>() > 0.0);
}

TEST_CASE("losses subcommands") {
    const fs::path dir = work_dir();
    const RunResult comb = run("losses combined --lz 0.5 --lx 0.05 --lambda 10");
    REQUIRE(comb.exit_code == 0);
    CHECK(first_report(comb.output)["loss"] == doctest::Approx(1.0));

    json vectors = {{"z0", {1.0, -2.0, 0.5}}, {"z1", {0.25, 3.0, -1.0}},
                    {"noise", {0.1, -0.3, 0.8}}};
    const std::string vec_path = (dir / "vectors.json").string();
    std::ofstream(vec_path) << vectors.dump();
    const RunResult bridge = run("losses bridge " + vec_path + " --t 0.5 --sigma 2");
    REQUIRE(bridge.exit_code == 0);
    CHECK(first_report(bridge.output)["recovery_max_err"].get<double>() < 1e-9);

    Grid<double> pred(2, 2, 1, 0.5), gt(2, 2);
    gt.at(0, 0) = 1;
    const std::string p = (dir / "lp.png").string();
    const std::string g = (dir / "lg.png").string();
    write_mask_png(p, pred);
    write_mask_png(g, gt);
    const RunResult bce = run("losses bce " + p + " " + g);
    REQUIRE(bce.exit_code == 0);
    CHECK(first_report(bce.output)["loss"].get<double>() ==
          doctest::Approx(std::log(2.0)).epsilon(1e-2));
    const RunResult iou_loss = run("losses iou " + p + " " + g);
    REQUIRE(iou_loss.exit_code == 0);

    Grid<float> x(4, 4, 3, 0.5f), y(4, 4, 3, 0.5f);
    const std::string xp = (dir / "x.pfm").string();
    const std::string yp = (dir / "y.pfm").string();
    write_pfm(xp, x);
    write_pfm(yp, y);
    const RunResult wl1 = run("losses weighted-l1 " + xp + " " + yp + " " + yp);
    REQUIRE(wl1.exit_code == 0);
    CHECK(first_report(wl1.output)["loss"] == doctest::Approx(0.0));
}

TEST_CASE("render-depth emits depth, mask and render files") {
    const fs::path dir = work_dir();
    const std::string out = (dir / "rd").string();
    REQUIRE(run("gen-scene --seed 4 --count 1 --out " + out + " --size 96").exit_code == 0);
    const std::string scene = out + "/scene_000.json";
    const RunResult r = run("render-depth " + scene + " --out-depth " + out +
                            "/d.pfm --out-mask " + out + "/m.png --out-render " + out +
                            "/r.pfm");
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(out + "/d.pfm"));
    CHECK(fs::exists(out + "/m.png"));
    auto [h, render] = read_pfm(out + "/r.pfm");
    CHECK(h.bands == 3);
    // regenerated depth matches the suite's own output
    uint64_t d1 = grid_digest(read_pfm(out + "/d.pfm").second);
    uint64_t d2 = grid_digest(read_pfm(out + "/depth_000.pfm").second);
    CHECK(d1 == d2);
}

TEST_CASE("lgi digests ignore the thread count and sunlight mode works") {
    const fs::path dir = work_dir();
    const std::string out = (dir / "thr").string();
    REQUIRE(run("gen-scene --seed 5 --count 1 --out " + out + " --size 96").exit_code == 0);
    const std::string depth = out + "/depth_000.pfm";
    const std::string scene = out + "/scene_000.json";
    const RunResult t1 =
        run("lgi " + depth + " " + scene + " --out " + out + "/t1 --threads 1");
    const RunResult t3 =
        run("lgi " + depth + " " + scene + " --out " + out + "/t3 --threads 3");
    REQUIRE(t1.exit_code == 0);
    REQUIRE(t3.exit_code == 0);
    CHECK(first_report(t1.output)["lgi_digest"] == first_report(t3.output)["lgi_digest"]);

    // LGIMAP_THREADS overrides --threads without changing the output
    setenv("LGIMAP_THREADS", "2", 1);
    const RunResult env =
        run("lgi " + depth + " " + scene + " --out " + out + "/env --threads 1");
    unsetenv("LGIMAP_THREADS");
    REQUIRE(env.exit_code == 0);
    CHECK(first_report(env.output)["lgi_digest"] == first_report(t1.output)["lgi_digest"]);

    const RunResult sun = run("lgi " + depth + " " + scene + " --out " + out +
                              "/sun --sunlight --soft 0.0174");
    REQUIRE(sun.exit_code == 0);
    CHECK(fs::exists(out + "/sun_hard.png"));
    CHECK(fs::exists(out + "/sun_soft.png"));
}

TEST_CASE("bench scales with threads on multi-core hosts") {
    if (std::thread::hardware_concurrency() < 2)
        return; // meaningless on a single hardware thread
    const RunResult r = run("bench --size 128 --n 16 --repeat 3 --threads 1 --threads 8");
    REQUIRE(r.exit_code == 0);
    const json rep = first_report(r.output);
    const double t1 = rep["runs"][0]["pixel_samples_per_s"].get<double>();
    const double t8 = rep["runs"][1]["pixel_samples_per_s"].get<double>();
    CHECK(t8 > t1);
}

TEST_CASE("unknown subcommands are input contract violations") {
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("eval only_one_arg.png").exit_code == 2);
}
