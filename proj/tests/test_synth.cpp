// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "core/scene_config.hpp"
#include "core/synth.hpp"
#include "naive_oracles.hpp"

using namespace lgimap;

TEST_CASE("render_depth ground plane matches the closed-form ray-plane hit") {
    const CameraIntrinsics K = CameraIntrinsics::default_for(128, 128);
    AnalyticScene scene;
    scene.primitives.push_back(GroundPlane{0.5});
    const DepthMap depth = render_depth(scene, K);
    // pixel below the principal point: q = ((u-cx)/fx, (v-cy)/fy, 1),
    // t = plane_y / q.y, depth = t
    const int u = 70, v = 100;
    const double qy = (v - K.cy) / K.fy;
    const double expected = 0.5 / qy;
    CHECK(depth.at(u, v) == doctest::Approx(expected).epsilon(1e-6));
    // above the horizon the rays never hit the plane
    CHECK_FALSE(depth.is_valid(64, 10));
    CHECK_FALSE(depth.is_valid(64, 64)); // optical axis is parallel to the plane
}

TEST_CASE("render_depth sphere front pole") {
    const CameraIntrinsics K = CameraIntrinsics::default_for(256, 256);
    AnalyticScene scene;
    scene.primitives.push_back(Sphere{{0.0, 0.0, 2.0}, 0.5});
    const DepthMap depth = render_depth(scene, K);
    CHECK(depth.at(128, 128) == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("oracle mask is empty without occluders") {
    const CameraIntrinsics K = CameraIntrinsics::default_for(96, 96);
    AnalyticScene scene;
    scene.primitives.push_back(GroundPlane{0.4});
    const DepthMap depth = render_depth(scene, K);
    const ShadowMask mask =
        oracle_shadow_mask(scene, depth, K, LightSpec::point({-1, -2, 1}), OracleConfig{});
    for (int y = 0; y < 96; ++y)
        for (int x = 0; x < 96; ++x) CHECK(mask.values.at(x, y) == 0.0);
}

TEST_CASE("oracle sphere shadow equals the analytic cone on ground pixels") {
    const CameraIntrinsics K = CameraIntrinsics::default_for(256, 256);
    const Point3 center{0.0, 0.1, 2.0};
    const double radius = 0.3;
    AnalyticScene scene;
    scene.primitives.push_back(GroundPlane{0.5});
    scene.primitives.push_back(Sphere{center, radius});
    const DepthMap depth = render_depth(scene, K);
    const LightSpec light = LightSpec::point({-1, -1.5, 1});
    const ShadowMask mask = oracle_shadow_mask(scene, depth, K, light, OracleConfig{});

    int shadowed = 0;
    for (int y = 0; y < 256; ++y) {
        for (int x = 0; x < 256; ++x) {
            if (!depth.is_valid(x, y)) continue;
            const Point3 p = lift(K, x, y, depth.at(x, y));
            // restrict to pixels whose nearest surface is the plane
            if (std::abs(p.y - 0.5) > 1e-9) continue;
            const bool cone = naive::in_sphere_shadow_cone(p, light.position, center, radius);
            CHECK(mask.values.at(x, y) == (cone ? 1.0 : 0.0));
            shadowed += cone;
        }
    }
    CHECK(shadowed > 50);
}

TEST_CASE("a light enclosed by a box blocks every exterior surface") {
    const CameraIntrinsics K = CameraIntrinsics::default_for(96, 96);
    AnalyticScene scene;
    scene.primitives.push_back(GroundPlane{0.5});
    scene.primitives.push_back(BoxAA{{-0.2, -0.4, 1.4}, {0.2, 0.0, 1.8}});
    const DepthMap depth = render_depth(scene, K);
    const LightSpec inside = LightSpec::point({0.0, -0.2, 1.6});
    const ShadowMask mask = oracle_shadow_mask(scene, depth, K, inside, OracleConfig{});
    for (int y = 0; y < 96; ++y) {
        for (int x = 0; x < 96; ++x) {
            if (!depth.is_valid(x, y)) continue;
            const Point3 p = lift(K, x, y, depth.at(x, y));
            const bool on_box = p.x > -0.21 && p.x < 0.21 && p.y > -0.41 && p.y < 0.01 &&
                                p.z > 1.39 && p.z < 1.81;
            if (!on_box) CHECK(mask.values.at(x, y) == 1.0);
        }
    }
}

TEST_CASE("relifted depth re-intersects the same surface") {
    const auto suite = scene_suite(2, 1, 128);
    const SuiteEntry& e = suite[0];
    const DepthMap depth = render_depth(e.scene, e.intrinsics);
    for (int y = 0; y < 128; y += 5) {
        for (int x = 0; x < 128; x += 5) {
            if (!depth.is_valid(x, y)) continue;
            const Point3 q{(x - e.intrinsics.cx) / e.intrinsics.fx,
                           (y - e.intrinsics.cy) / e.intrinsics.fy, 1.0};
            const auto t = intersect_scene(e.scene, {0, 0, 0}, q, 0.0,
                                           std::numeric_limits<double>::infinity());
            REQUIRE(t.has_value());
            CHECK(std::abs(*t - depth.at(x, y)) < 1e-6);
        }
    }
}

TEST_CASE("scene_suite is deterministic and visibly shadowed") {
    const auto a = scene_suite(0, 4, 128);
    const auto b = scene_suite(0, 4, 128);
    REQUIRE(a.size() == 4);
    REQUIRE(b.size() == 4);
    for (size_t i = 0; i < a.size(); ++i) {
        const DepthMap da = render_depth(a[i].scene, a[i].intrinsics);
        const DepthMap db = render_depth(b[i].scene, b[i].intrinsics);
        CHECK(grid_digest(da.values) == grid_digest(db.values));
        CHECK(a[i].light.position.x == b[i].light.position.x);
        CHECK(a[i].light.color == b[i].light.color);

        const ShadowMask gt =
            oracle_shadow_mask(a[i].scene, da, a[i].intrinsics, a[i].light, OracleConfig{});
        int shadowed = 0;
        for (int y = 0; y < gt.height; ++y)
            for (int x = 0; x < gt.width; ++x)
                if (gt.values.at(x, y) == 1.0) ++shadowed;
        CHECK(shadowed >= 50);
    }
    // different seeds diverge
    const auto c = scene_suite(1, 1, 128);
    const DepthMap dc = render_depth(c[0].scene, c[0].intrinsics);
    const DepthMap d0 = render_depth(a[0].scene, a[0].intrinsics);
    CHECK(grid_digest(dc.values) != grid_digest(d0.values));
}

TEST_CASE("suite default count is twenty") {
    // documented constant; generate cheaply at a small probe size
    const auto suite = scene_suite(0, 20, 64);
    CHECK(suite.size() == 20);
}

TEST_CASE("direct render is linear in its lights") {
    const auto suite = scene_suite(4, 1, 96);
    const SuiteEntry& e = suite[0];
    LightSpec second = LightSpec::point(
        {e.light.position.x * -0.5, e.light.position.y, e.light.position.z + 0.3});
    second.color = {0.9, 0.4, 0.2};
    const std::vector<LightSpec> both{e.light, second};
    const LinearImage lit_a =
        render_direct(e.scene, e.intrinsics, std::span(&e.light, 1), OracleConfig{});
    const LinearImage lit_b =
        render_direct(e.scene, e.intrinsics, std::span(&second, 1), OracleConfig{});
    const LinearImage lit_ab = render_direct(e.scene, e.intrinsics, both, OracleConfig{});
    std::vector<LinearImage> parts{lit_a, lit_b};
    const LinearImage summed = compose_lights(parts);
    double max_err = 0.0;
    for (size_t i = 0; i < summed.size(); ++i)
        max_err = std::max(max_err,
                           std::abs(static_cast<double>(summed.data()[i]) - lit_ab.data()[i]));
    CHECK(max_err < 1e-6);
}

TEST_CASE("scene and oracle validation") {
    AnalyticScene empty;
    CHECK_THROWS_AS(empty.validate(), Error);
    AnalyticScene bad;
    bad.primitives.push_back(Sphere{{0, 0, 0}, -1.0});
    CHECK_THROWS_AS(bad.validate(), Error);
    AnalyticScene bad_box;
    bad_box.primitives.push_back(BoxAA{{0, 0, 0}, {-1, 1, 1}});
    CHECK_THROWS_AS(bad_box.validate(), Error);
    OracleConfig cfg;
    cfg.shadow_epsilon = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
}
