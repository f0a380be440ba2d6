// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "core/bridge.hpp"
#include "core/geometry.hpp"
#include "core/lgi.hpp"

namespace lgimap {

// Primitives live in camera coordinates (x right, y down, z forward); the
// ground plane is y = height with y growing downward.
struct GroundPlane {
    double y = 0.0;
};

struct Wall {
    double z = 0.0;
};

struct Sphere {
    Point3 center;
    double radius = 0.0;
};

struct BoxAA {
    Point3 min;
    Point3 max;
};

using Primitive = std::variant<GroundPlane, Wall, Sphere, BoxAA>;

struct AnalyticScene {
    std::vector<Primitive> primitives;

    void validate() const;
};

struct OracleConfig {
    double shadow_epsilon = 1e-5; // ray-origin offset along the shadow ray
    double max_t = std::numeric_limits<double>::infinity();

    void validate() const;
};

// Nearest hit along r(t) = origin + t*dir, t in (t_min, t_max); nullopt when
// nothing is hit. Exact closed forms per primitive.
std::optional<double> intersect_scene(const AnalyticScene& scene, const Point3& origin,
                                      const Point3& dir, double t_min, double t_max);

// Exact z-depth per pixel (ray through the pixel center); misses are NaN.
DepthMap render_depth(const AnalyticScene& scene, const CameraIntrinsics& K,
                      int threads = 0);

// Brute-force ground truth: per valid pixel, cast an exact shadow ray from
// the lifted point to the light (point) or to infinity (directional);
// 1 where any primitive blocks it.
ShadowMask oracle_shadow_mask(const AnalyticScene& scene, const DepthMap& depth,
                              const CameraIntrinsics& K, const LightSpec& light,
                              const OracleConfig& cfg, int threads = 0);

// Lambertian direct-illumination render with exact oracle shadowing:
// point lights fall off as intensity/r^2, directional lights are
// unattenuated. Linear radiance, no tone mapping.
LinearImage render_direct(const AnalyticScene& scene, const CameraIntrinsics& K,
                          std::span<const LightSpec> lights, const OracleConfig& cfg,
                          int threads = 0);

struct SuiteEntry {
    AnalyticScene scene;
    LightSpec light;
    CameraIntrinsics intrinsics;
};

// Deterministic desk-scale verification suite: ground plane, optional wall,
// one occluder (sphere or box), front-hemisphere point light chosen so that
// every light-facing occluder surface is camera-visible and the cast shadow
// lands inside the image. Same seed reproduces the suite bit-for-bit.
std::vector<SuiteEntry> scene_suite(uint64_t seed, int count = 20, int image_size = 256);

} // namespace lgimap
