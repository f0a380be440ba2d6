// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0
//
// lgimap command-line tool. Everything computational goes through the
// shared-library C API; this file only parses arguments, moves files and
// assembles JSON-line run reports.

#include <lgimap/lgimap.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliError {
    lgim_status status;
    std::string message;
};

void check(lgim_status s) {
    if (s != LGIM_OK) throw CliError{s, lgim_last_error()};
}

int exit_code_for(lgim_status s) {
    return s == LGIM_ERR_INTERNAL ? 1 : 2;
}

struct Image {
    lgim_image* h = nullptr;

    Image() = default;
    Image(const Image&) = delete;
    Image& operator=(const Image&) = delete;
    Image(Image&& o) noexcept : h(o.h) { o.h = nullptr; }
    Image& operator=(Image&& o) noexcept {
        std::swap(h, o.h);
        return *this;
    }
    ~Image() { lgim_image_destroy(h); }

    lgim_image** out() {
        lgim_image_destroy(h);
        h = nullptr;
        return &h;
    }
    operator lgim_image*() const { return h; }
};

struct Scene {
    lgim_scene* h = nullptr;

    Scene() = default;
    Scene(const Scene&) = delete;
    Scene& operator=(const Scene&) = delete;
    Scene(Scene&& o) noexcept : h(o.h) { o.h = nullptr; }
    ~Scene() { lgim_scene_destroy(h); }

    lgim_scene** out() { return &h; }
    operator lgim_scene*() const { return h; }
};

std::string hex_digest(uint64_t d) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(d));
    return buf;
}

std::string file_digest(const std::string& path) {
    uint64_t d = 0;
    check(lgim_file_digest(path.c_str(), &d));
    return hex_digest(d);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

// LGIMAP_THREADS beats the --threads option when set.
int effective_threads(int cli_threads) {
    if (const char* env = std::getenv("LGIMAP_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return cli_threads;
}

json params_json(const lgim_lgi_params& p) {
    return {{"n_samples", p.n_samples},
            {"eta", p.eta},
            {"z_near", p.z_near},
            {"softness_beta", p.softness_beta},
            {"interp", p.interp == 0 ? "nearest" : "bilinear"}};
}

json scene_json(lgim_scene* scene) {
    char* text = nullptr;
    check(lgim_scene_json(scene, &text));
    json j = json::parse(text);
    lgim_string_free(text);
    return j;
}

void emit_report(json report) {
    report["tool_version"] = lgim_version();
    std::puts(report.dump().c_str());
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{LGIM_ERR_IO, "cannot open " + path};
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw CliError{LGIM_ERR_FORMAT, path + ": " + e.what()};
    }
    return j;
}

std::vector<double> as_vector(const json& j, const std::string& what) {
    if (!j.is_array()) throw CliError{LGIM_ERR_FORMAT, what + " must be an array"};
    std::vector<double> v;
    for (const auto& e : j) v.push_back(e.get<double>());
    return v;
}

// ---------------- subcommands ----------------

int cmd_gen_scene(uint64_t seed, int count, const std::string& out_dir, int size,
                  int threads) {
    const auto start = std::chrono::steady_clock::now();
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir))
        throw CliError{LGIM_ERR_IO, "cannot create output directory " + out_dir};

    json outputs = json::object();
    json scenes = json::array();
    for (int i = 0; i < count; ++i) {
        Scene scene;
        check(lgim_scene_suite(seed, count, i, size, scene.out()));

        char name[64];
        std::snprintf(name, sizeof(name), "scene_%03d.json", i);
        const std::string scene_path = (fs::path(out_dir) / name).string();
        std::snprintf(name, sizeof(name), "depth_%03d.pfm", i);
        const std::string depth_path = (fs::path(out_dir) / name).string();
        std::snprintf(name, sizeof(name), "mask_%03d.png", i);
        const std::string mask_path = (fs::path(out_dir) / name).string();

        check(lgim_scene_save(scene, scene_path.c_str()));
        Image depth;
        check(lgim_render_depth(scene, threads, depth.out()));
        check(lgim_write_pfm(depth_path.c_str(), depth));
        Image mask;
        check(lgim_oracle_shadow_mask(scene, depth, 0, threads, mask.out()));
        check(lgim_write_mask_png(mask_path.c_str(), mask));

        outputs[scene_path] = file_digest(scene_path);
        outputs[depth_path] = file_digest(depth_path);
        outputs[mask_path] = file_digest(mask_path);
        scenes.push_back(scene_json(scene));
    }

    emit_report({{"command", "gen-scene"},
                 {"seed", seed},
                 {"config", {{"count", count}, {"size", size}, {"threads", threads}}},
                 {"scenes", scenes},
                 {"outputs", outputs},
                 {"timing_ms", elapsed_ms(start)}});
    return 0;
}

int cmd_render_depth(const std::string& scene_path, const std::string& out_depth,
                     const std::string& out_mask, const std::string& out_render,
                     int light_index, int threads) {
    const auto start = std::chrono::steady_clock::now();
    Scene scene;
    check(lgim_scene_load(scene_path.c_str(), scene.out()));
    uint64_t seed = 0;
    check(lgim_scene_seed(scene, &seed));

    json outputs = json::object();
    Image depth;
    check(lgim_render_depth(scene, threads, depth.out()));
    check(lgim_write_pfm(out_depth.c_str(), depth));
    outputs[out_depth] = file_digest(out_depth);

    if (!out_mask.empty()) {
        Image mask;
        check(lgim_oracle_shadow_mask(scene, depth, light_index, threads, mask.out()));
        check(lgim_write_mask_png(out_mask.c_str(), mask));
        outputs[out_mask] = file_digest(out_mask);
    }
    if (!out_render.empty()) {
        const int32_t idx = light_index;
        Image render;
        check(lgim_render_direct(scene, &idx, 1, threads, render.out()));
        check(lgim_write_pfm(out_render.c_str(), render));
        outputs[out_render] = file_digest(out_render);
    }

    emit_report({{"command", "render-depth"},
                 {"seed", seed},
                 {"config", {{"light_index", light_index}, {"threads", threads}}},
                 {"scene", scene_json(scene)},
                 {"inputs", {{scene_path, file_digest(scene_path)}}},
                 {"outputs", outputs},
                 {"timing_ms", elapsed_ms(start)}});
    return 0;
}

int cmd_lgi(const std::string& depth_path, const std::string& scene_path,
            const std::string& prefix, std::optional<int> n_override,
            std::optional<double> eta_override, std::optional<std::string> interp_override,
            bool sunlight, std::optional<double> soft_beta, int light_index, int threads) {
    const auto start = std::chrono::steady_clock::now();
    Scene scene;
    check(lgim_scene_load(scene_path.c_str(), scene.out()));
    uint64_t seed = 0;
    check(lgim_scene_seed(scene, &seed));
    Image depth;
    check(lgim_read_pfm(depth_path.c_str(), depth.out()));

    lgim_intrinsics K;
    check(lgim_scene_intrinsics(scene, &K));
    lgim_lgi_params params;
    check(lgim_scene_lgi_params(scene, &params));
    if (n_override) params.n_samples = *n_override;
    if (eta_override) params.eta = *eta_override;
    if (interp_override) {
        if (*interp_override == "nearest") params.interp = 0;
        else if (*interp_override == "bilinear") params.interp = 1;
        else throw CliError{LGIM_ERR_ARGUMENT, "--interp must be nearest or bilinear"};
    }

    lgim_light light;
    check(lgim_scene_light(scene, light_index, &light));

    Image maps, valid;
    if (sunlight) {
        double dir[3];
        if (light.kind == 1) {
            dir[0] = light.direction[0];
            dir[1] = light.direction[1];
            dir[2] = light.direction[2];
        } else {
            // Parallel-ray stand-in for a distant point light: direction
            // of the light position seen from the camera origin.
            const double n = std::sqrt(light.position[0] * light.position[0] +
                                       light.position[1] * light.position[1] +
                                       light.position[2] * light.position[2]);
            if (n == 0.0)
                throw CliError{LGIM_ERR_DEGENERATE, "light position is the origin"};
            for (int i = 0; i < 3; ++i) dir[i] = light.position[i] / n;
        }
        check(lgim_compute_lgi_sunlight(depth, &K, dir, &params, threads, maps.out(),
                                        valid.out()));
    } else {
        check(lgim_compute_lgi(depth, &K, &light, &params, threads, maps.out(), valid.out()));
    }

    json outputs = json::object();
    const std::string maps_path = prefix + "_lgi.pfm";
    const std::string valid_path = prefix + "_valid.png";
    const std::string hard_path = prefix + "_hard.png";
    check(lgim_write_pfm(maps_path.c_str(), maps));
    check(lgim_write_mask_png(valid_path.c_str(), valid));
    Image hard;
    check(lgim_hard_mask(maps, valid, params.eta, hard.out()));
    check(lgim_write_mask_png(hard_path.c_str(), hard));
    outputs[maps_path] = file_digest(maps_path);
    outputs[valid_path] = file_digest(valid_path);
    outputs[hard_path] = file_digest(hard_path);
    if (soft_beta) {
        Image soft;
        check(lgim_soft_mask(maps, valid, params.eta, *soft_beta, soft.out()));
        const std::string soft_path = prefix + "_soft.png";
        check(lgim_write_mask_png(soft_path.c_str(), soft));
        outputs[soft_path] = file_digest(soft_path);
    }

    json config = params_json(params);
    config["light_index"] = light_index;
    config["sunlight"] = sunlight;
    config["threads"] = threads;
    if (soft_beta) config["soft_beta"] = *soft_beta;

    emit_report({{"command", "lgi"},
                 {"seed", seed},
                 {"config", config},
                 {"inputs",
                  {{depth_path, file_digest(depth_path)},
                   {scene_path, file_digest(scene_path)}}},
                 {"outputs", outputs},
                 {"lgi_digest", hex_digest(lgim_image_digest(maps))},
                 {"timing_ms", elapsed_ms(start)}});
    return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& gt_path, double threshold,
             const std::vector<std::string>& rmse_paths) {
    const auto start = std::chrono::steady_clock::now();
    Image pred, gt;
    check(lgim_read_mask_png(pred_path.c_str(), pred.out()));
    check(lgim_read_mask_png(gt_path.c_str(), gt.out()));

    lgim_confusion c;
    check(lgim_confusion_counts(pred, gt, threshold, &c));

    json metrics;
    metrics["confusion"] = {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}};
    double v = 0.0;
    // Degenerate denominators surface as explicit "undefined" report fields.
    metrics["iou"] = lgim_iou(&c, &v) == LGIM_OK ? json(v) : json("undefined");
    metrics["ber"] = lgim_ber(&c, &v) == LGIM_OK ? json(v) : json("undefined");

    json inputs = {{pred_path, file_digest(pred_path)}, {gt_path, file_digest(gt_path)}};

    if (!rmse_paths.empty()) {
        Image a, b;
        check(lgim_read_pfm(rmse_paths[0].c_str(), a.out()));
        check(lgim_read_pfm(rmse_paths[1].c_str(), b.out()));
        metrics["rmse_overall"] =
            lgim_rmse(a, b, nullptr, &v) == LGIM_OK ? json(v) : json("undefined");
        metrics["rmse_gt_region"] =
            lgim_rmse(a, b, gt, &v) == LGIM_OK ? json(v) : json("undefined");
        inputs[rmse_paths[0]] = file_digest(rmse_paths[0]);
        inputs[rmse_paths[1]] = file_digest(rmse_paths[1]);
    }

    emit_report({{"command", "eval"},
                 {"seed", nullptr},
                 {"config", {{"threshold", threshold}}},
                 {"inputs", inputs},
                 {"metrics", metrics},
                 {"timing_ms", elapsed_ms(start)}});
    return 0;
}

int cmd_compose(const std::vector<std::string>& input_paths, const std::string& out_path,
                const std::string& clamp_path) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Image> images(input_paths.size());
    std::vector<const lgim_image*> handles;
    json inputs = json::object();
    for (size_t i = 0; i < input_paths.size(); ++i) {
        check(lgim_read_pfm(input_paths[i].c_str(), images[i].out()));
        handles.push_back(images[i]);
        inputs[input_paths[i]] = file_digest(input_paths[i]);
    }

    Image sum;
    check(lgim_compose(handles.data(), static_cast<int32_t>(handles.size()), sum.out()));
    check(lgim_write_pfm(out_path.c_str(), sum));
    json outputs = {{out_path, file_digest(out_path)}};

    if (!clamp_path.empty()) {
        Image clamped;
        check(lgim_clamp_display(sum, clamped.out()));
        // Display transform goes out as an 8-bit PNG when single channel,
        // otherwise as a clamped PFM.
        if (lgim_image_channels(clamped) == 1)
            check(lgim_write_mask_png(clamp_path.c_str(), clamped));
        else
            check(lgim_write_pfm(clamp_path.c_str(), clamped));
        outputs[clamp_path] = file_digest(clamp_path);
    }

    emit_report({{"command", "compose"},
                 {"seed", nullptr},
                 {"config", {{"count", input_paths.size()}}},
                 {"inputs", inputs},
                 {"outputs", outputs},
                 {"timing_ms", elapsed_ms(start)}});
    return 0;
}

int cmd_bench(int size, int n_samples, std::vector<int> thread_counts, int repeat,
              const std::string& interp) {
    const auto start = std::chrono::steady_clock::now();
    if (const char* env = std::getenv("LGIMAP_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) thread_counts = {v};
    }
    if (thread_counts.empty()) thread_counts = {1, 2, 8};

    Scene scene;
    check(lgim_scene_suite(0, 1, 0, size, scene.out()));
    lgim_intrinsics K;
    check(lgim_scene_intrinsics(scene, &K));
    Image depth;
    check(lgim_render_depth(scene, 0, depth.out()));
    lgim_light light;
    check(lgim_scene_light(scene, 0, &light));
    lgim_lgi_params params;
    lgim_lgi_params_defaults(&params);
    params.n_samples = n_samples;
    params.interp = interp == "nearest" ? 0 : 1;

    json runs = json::array();
    std::vector<uint64_t> digests;
    for (int threads : thread_counts) {
        std::vector<double> times;
        uint64_t digest = 0;
        for (int r = 0; r < repeat; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            Image maps, valid;
            check(lgim_compute_lgi(depth, &K, &light, &params, threads, maps.out(),
                                   valid.out()));
            times.push_back(elapsed_ms(t0));
            digest = lgim_image_digest(maps);
        }
        std::sort(times.begin(), times.end());
        const double median_ms = times[times.size() / 2];
        const double throughput =
            static_cast<double>(size) * size * n_samples / (median_ms / 1000.0);
        digests.push_back(digest);
        runs.push_back({{"threads", threads},
                        {"median_ms", median_ms},
                        {"pixel_samples_per_s", throughput},
                        {"digest", hex_digest(digest)}});
    }

    const bool invariant =
        std::all_of(digests.begin(), digests.end(), [&](uint64_t d) { return d == digests[0]; });
    if (!invariant)
        throw CliError{LGIM_ERR_INTERNAL, "LGI digests differ across thread counts"};

    emit_report({{"command", "bench"},
                 {"seed", 0},
                 {"config",
                  {{"size", size},
                   {"n_samples", n_samples},
                   {"repeat", repeat},
                   {"interp", interp},
                   {"thread_counts", thread_counts}}},
                 {"runs", runs},
                 {"digest_invariant", invariant},
                 {"timing_ms", elapsed_ms(start)}});
    return 0;
}

int cmd_losses_weighted_l1(const std::string& x1_hat, const std::string& x1,
                           const std::string& x0, double tau, int kernel) {
    Image a, b, c;
    check(lgim_read_pfm(x1_hat.c_str(), a.out()));
    check(lgim_read_pfm(x1.c_str(), b.out()));
    check(lgim_read_pfm(x0.c_str(), c.out()));
    double v = 0.0;
    check(lgim_weighted_l1(a, b, c, tau, kernel, &v));
    emit_report({{"command", "losses.weighted-l1"},
                 {"seed", nullptr},
                 {"config", {{"tau", tau}, {"kernel", kernel}}},
                 {"inputs",
                  {{x1_hat, file_digest(x1_hat)},
                   {x1, file_digest(x1)},
                   {x0, file_digest(x0)}}},
                 {"loss", v}});
    return 0;
}

int cmd_losses_mask(const std::string& which, const std::string& pred_path,
                    const std::string& gt_path) {
    Image pred, gt;
    check(lgim_read_mask_png(pred_path.c_str(), pred.out()));
    check(lgim_read_mask_png(gt_path.c_str(), gt.out()));
    double v = 0.0;
    if (which == "bce") check(lgim_mask_bce(pred, gt, &v));
    else check(lgim_mask_iou_loss(pred, gt, &v));
    emit_report({{"command", "losses." + which},
                 {"seed", nullptr},
                 {"config", json::object()},
                 {"inputs",
                  {{pred_path, file_digest(pred_path)}, {gt_path, file_digest(gt_path)}}},
                 {"loss", v}});
    return 0;
}

int cmd_losses_combined(double lz, double lx, double lambda) {
    double v = 0.0;
    check(lgim_combined_loss(lz, lx, lambda, &v));
    emit_report({{"command", "losses.combined"},
                 {"seed", nullptr},
                 {"config", {{"lz", lz}, {"lx", lx}, {"lambda", lambda}}},
                 {"loss", v}});
    return 0;
}

int cmd_losses_bridge(const std::string& vectors_path, double t, double sigma) {
    const json doc = load_json_file(vectors_path);
    const std::vector<double> z0 = as_vector(doc.at("z0"), "z0");
    const std::vector<double> z1 = as_vector(doc.at("z1"), "z1");
    std::vector<double> noise(z0.size(), 0.0);
    if (doc.contains("noise")) noise = as_vector(doc["noise"], "noise");
    if (z0.size() != z1.size() || z0.size() != noise.size())
        throw CliError{LGIM_ERR_SHAPE, "z0/z1/noise dimensions differ"};

    std::vector<double> zt(z0.size()), drift(z0.size()), recovered(z0.size());
    check(lgim_bridge_sample(z0.data(), z1.data(), noise.data(), z0.size(), t, sigma,
                             zt.data()));
    check(lgim_drift_target(zt.data(), z1.data(), z0.size(), t, drift.data()));
    check(lgim_retrieve_target(zt.data(), drift.data(), z0.size(), t, recovered.data()));

    double max_err = 0.0;
    for (size_t i = 0; i < z1.size(); ++i)
        max_err = std::max(max_err, std::abs(recovered[i] - z1[i]));

    emit_report({{"command", "losses.bridge"},
                 {"seed", nullptr},
                 {"config", {{"t", t}, {"sigma", sigma}}},
                 {"inputs", {{vectors_path, file_digest(vectors_path)}}},
                 {"z_t", zt},
                 {"drift", drift},
                 {"recovered", recovered},
                 {"recovery_max_err", max_err}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"light-geometry interaction maps toolkit"};
    app.require_subcommand(1);
    std::function<int()> run;

    // gen-scene
    {
        auto* cmd = app.add_subcommand("gen-scene",
                                       "generate a deterministic verification suite: "
                                       "scene configs, exact depth maps, oracle shadow masks");
        auto seed = std::make_shared<uint64_t>(0);
        auto count = std::make_shared<int>(20);
        auto out_dir = std::make_shared<std::string>();
        auto size = std::make_shared<int>(256);
        auto threads = std::make_shared<int>(0);
        cmd->add_option("--seed", *seed, "suite seed");
        cmd->add_option("--count", *count, "number of scenes")->check(CLI::NonNegativeNumber);
        cmd->add_option("--out", *out_dir, "output directory")->required();
        cmd->add_option("--size", *size, "image size in pixels");
        cmd->add_option("--threads", *threads, "worker threads (0 = auto)");
        cmd->callback([=, &run] {
            run = [=] {
                return cmd_gen_scene(*seed, *count, *out_dir, *size,
                                     effective_threads(*threads));
            };
        });
    }

    // render-depth
    {
        auto* cmd = app.add_subcommand("render-depth",
                                       "render exact depth (and optionally the oracle mask "
                                       "and a direct-lighting image) for a scene config");
        auto scene = std::make_shared<std::string>();
        auto out_depth = std::make_shared<std::string>();
        auto out_mask = std::make_shared<std::string>();
        auto out_render = std::make_shared<std::string>();
        auto light_index = std::make_shared<int>(0);
        auto threads = std::make_shared<int>(0);
        cmd->add_option("scene", *scene, "scene config (JSON)")->required();
        cmd->add_option("--out-depth", *out_depth, "depth PFM path")->required();
        cmd->add_option("--out-mask", *out_mask, "oracle shadow-mask PNG path");
        cmd->add_option("--out-render", *out_render, "direct-lighting PFM path");
        cmd->add_option("--light-index", *light_index, "scene light to use");
        cmd->add_option("--threads", *threads, "worker threads (0 = auto)");
        cmd->callback([=, &run] {
            run = [=] {
                return cmd_render_depth(*scene, *out_depth, *out_mask, *out_render,
                                        *light_index, effective_threads(*threads));
            };
        });
    }

    // lgi
    {
        auto* cmd = app.add_subcommand(
            "lgi", "compute LGI maps and shadow masks from a depth map and a scene light");
        auto depth = std::make_shared<std::string>();
        auto scene = std::make_shared<std::string>();
        auto prefix = std::make_shared<std::string>();
        auto n = std::make_shared<int>(-1);
        auto eta = std::make_shared<double>(-1.0);
        auto interp = std::make_shared<std::string>();
        auto sunlight = std::make_shared<bool>(false);
        auto soft = std::make_shared<double>(-1.0);
        auto light_index = std::make_shared<int>(0);
        auto threads = std::make_shared<int>(0);
        cmd->add_option("depth", *depth, "depth map (PFM)")->required();
        cmd->add_option("scene", *scene, "scene config (JSON)")->required();
        cmd->add_option("--out", *prefix, "output path prefix")->required();
        cmd->add_option("--n", *n, "sample count override");
        cmd->add_option("--eta", *eta, "hard-mask threshold override (rad)");
        cmd->add_option("--interp", *interp, "nearest or bilinear");
        cmd->add_flag("--sunlight", *sunlight, "parallel-ray variant along the light direction");
        cmd->add_option("--soft", *soft, "also write a soft mask with this beta (rad)");
        cmd->add_option("--light-index", *light_index, "scene light to use");
        cmd->add_option("--threads", *threads, "worker threads (0 = auto)");
        cmd->callback([=, &run] {
            run = [=] {
                return cmd_lgi(*depth, *scene, *prefix,
                               *n > 0 ? std::optional<int>(*n) : std::nullopt,
                               *eta > 0 ? std::optional<double>(*eta) : std::nullopt,
                               interp->empty() ? std::nullopt
                                               : std::optional<std::string>(*interp),
                               *sunlight,
                               *soft > 0 ? std::optional<double>(*soft) : std::nullopt,
                               *light_index, effective_threads(*threads));
            };
        });
    }

    // eval
    {
        auto* cmd = app.add_subcommand("eval", "IoU/BER/RMSE metrics as a JSON report");
        auto pred = std::make_shared<std::string>();
        auto gt = std::make_shared<std::string>();
        auto threshold = std::make_shared<double>(0.5);
        auto rmse_paths = std::make_shared<std::vector<std::string>>();
        cmd->add_option("pred", *pred, "predicted mask (PNG)")->required();
        cmd->add_option("gt", *gt, "ground-truth mask (PNG)")->required();
        cmd->add_option("--threshold", *threshold, "binarization threshold");
        cmd->add_option("--region-rmse", *rmse_paths,
                        "two PFM images; reports overall and GT-region RMSE")
            ->expected(2);
        cmd->callback([=, &run] {
            run = [=] { return cmd_eval(*pred, *gt, *threshold, *rmse_paths); };
        });
    }

    // compose
    {
        auto* cmd = app.add_subcommand(
            "compose", "sum linear-radiance PFM images (per-light contributions)");
        auto inputs = std::make_shared<std::vector<std::string>>();
        auto out = std::make_shared<std::string>();
        auto clamp = std::make_shared<std::string>();
        cmd->add_option("inputs", *inputs, "input PFM images")->required()->expected(-1);
        cmd->add_option("--out", *out, "output PFM path")->required();
        cmd->add_option("--clamp", *clamp, "also write a [0,1]-clamped display image");
        cmd->callback([=, &run] {
            run = [=] { return cmd_compose(*inputs, *out, *clamp); };
        });
    }

    // bench
    {
        auto* cmd = app.add_subcommand(
            "bench", "LGI throughput benchmark with thread-invariance check");
        auto size = std::make_shared<int>(512);
        auto n = std::make_shared<int>(16);
        auto threads = std::make_shared<std::vector<int>>();
        auto repeat = std::make_shared<int>(3);
        auto interp = std::make_shared<std::string>("bilinear");
        cmd->add_option("--size", *size, "image size in pixels");
        cmd->add_option("--n", *n, "sample count");
        cmd->add_option("--threads", *threads, "thread counts to benchmark");
        cmd->add_option("--repeat", *repeat, "repetitions per thread count");
        cmd->add_option("--interp", *interp, "nearest or bilinear");
        cmd->callback([=, &run] {
            run = [=] { return cmd_bench(*size, *n, *threads, *repeat, *interp); };
        });
    }

    // losses
    {
        auto* losses = app.add_subcommand("losses", "loss-kernel evaluations");
        losses->require_subcommand(1);
        {
            auto* c = losses->add_subcommand("weighted-l1",
                                             "change-weighted L1 between prediction and target");
            auto x1h = std::make_shared<std::string>();
            auto x1 = std::make_shared<std::string>();
            auto x0 = std::make_shared<std::string>();
            auto tau = std::make_shared<double>(0.01);
            auto kernel = std::make_shared<int>(17);
            c->add_option("x1_hat", *x1h, "predicted image (PFM)")->required();
            c->add_option("x1", *x1, "target image (PFM)")->required();
            c->add_option("x0", *x0, "source image (PFM)")->required();
            c->add_option("--tau", *tau, "change threshold");
            c->add_option("--kernel", *kernel, "dilation kernel size (odd)");
            c->callback([=, &run] {
                run = [=] { return cmd_losses_weighted_l1(*x1h, *x1, *x0, *tau, *kernel); };
            });
        }
        for (const char* which : {"bce", "iou"}) {
            auto* c = losses->add_subcommand(
                which, std::string(which) == "bce" ? "binary cross-entropy between masks"
                                                   : "IoU loss between masks");
            auto pred = std::make_shared<std::string>();
            auto gt = std::make_shared<std::string>();
            auto name = std::make_shared<std::string>(which);
            c->add_option("pred", *pred, "predicted mask (PNG)")->required();
            c->add_option("gt", *gt, "ground-truth mask (PNG)")->required();
            c->callback([=, &run] {
                run = [=] { return cmd_losses_mask(*name, *pred, *gt); };
            });
        }
        {
            auto* c = losses->add_subcommand("combined", "lz + lambda * lx");
            auto lz = std::make_shared<double>(0.0);
            auto lx = std::make_shared<double>(0.0);
            auto lambda = std::make_shared<double>(10.0);
            c->add_option("--lz", *lz, "latent loss")->required();
            c->add_option("--lx", *lx, "pixel loss")->required();
            c->add_option("--lambda", *lambda, "pixel-loss weight");
            c->callback([=, &run] {
                run = [=] { return cmd_losses_combined(*lz, *lx, *lambda); };
            });
        }
        {
            auto* c = losses->add_subcommand(
                "bridge", "bridge sample, drift target and recovery on serialized vectors");
            auto path = std::make_shared<std::string>();
            auto t = std::make_shared<double>(0.5);
            auto sigma = std::make_shared<double>(1.0);
            c->add_option("vectors", *path, "JSON file with z0, z1 and optional noise")
                ->required();
            c->add_option("--t", *t, "bridge time in [0,1)");
            c->add_option("--sigma", *sigma, "noise level");
            c->callback([=, &run] {
                run = [=] { return cmd_losses_bridge(*path, *t, *sigma); };
            });
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // bad usage is an input-contract violation
    }

    try {
        return run();
    } catch (const CliError& e) {
        std::fprintf(stderr, "error (%s): %s\n", lgim_status_name(e.status),
                     e.message.c_str());
        return exit_code_for(e.status);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
