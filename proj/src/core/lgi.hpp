// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <vector>

#include "core/geometry.hpp"

namespace lgimap {

enum class Interp { Nearest, Bilinear };

struct LgiConfig {
    int n_samples = 16;
    double eta = 0.08726646259971647;            // 5 degrees
    double z_near = 1e-4;
    double softness_beta = 0.017453292519943295; // 1 degree
    Interp interp = Interp::Bilinear;

    void validate() const;
};

// Per-pixel elevation-difference statistics along the light ray:
// c1 = min e^d, c2 = max e^d, c3 = signed e^d at the argmin of |e^d|.
// Invalid pixels carry zeros and valid = 0; valid channels lie in (-pi, pi)
// and satisfy c1 <= c3 <= c2.
struct LgiMaps {
    int width = 0;
    int height = 0;
    Grid<double> c1;
    Grid<double> c2;
    Grid<double> c3;
    Grid<uint8_t> valid;
};

struct ShadowMask {
    enum class Kind { Hard, Soft };

    int width = 0;
    int height = 0;
    Grid<double> values; // [0,1], 1 = shadowed
    Kind kind = Kind::Hard;
};

struct RaySample {
    double delta = 0.0;   // ray parameter; fraction of |l-p| for point lights,
                          // absolute distance for directional lights
    Point3 position;
    bool in_frustum = false;
};

// Uniform samples along the ray from p toward the light, clipped to the
// front-facing frustum (z >= z_near and projection inside the image
// rectangle). Directional rays additionally stop at z = z_far when the ray
// never leaves the frustum laterally.
std::vector<RaySample> sample_ray(const Point3& p, const LightSpec& light,
                                  const LgiConfig& cfg, const CameraIntrinsics& K,
                                  double z_far = std::numeric_limits<double>::infinity());

// Depth lookup at a sub-pixel position. Bilinear blends the four neighbors
// when all are valid and falls back to the nearest pixel otherwise; returns
// nullopt when the resolved value is invalid.
std::optional<double> fetch_depth(const DepthMap& depth, double u, double v, Interp interp);

LgiMaps compute_lgi(const DepthMap& depth, const CameraIntrinsics& K,
                    const LightSpec& light, const LgiConfig& cfg, int threads = 0);

// Parallel-ray variant: direction is the unit vector pointing at the light.
LgiMaps lgi_sunlight(const DepthMap& depth, const CameraIntrinsics& K,
                     const Point3& direction, const LgiConfig& cfg, int threads = 0);

ShadowMask hard_mask(const LgiMaps& maps, double eta);
ShadowMask soft_mask(const LgiMaps& maps, double eta, double beta);

// --- diagnostics and differentiability support ---

// Which bound pinned delta_max for a pixel's ray.
enum class RayClip : int {
    None = -1,
    Cap = 0,    // delta = 1 for point lights
    ZNear = 1,
    ZFar = 2,
    UMin = 3,
    UMax = 4,
    VMin = 5,
    VMax = 6,
};

struct PixelLgiDetail {
    bool valid = false;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    int argmin_n = 0;  // 1-based sample index behind c3
    int n_valid = 0;
    RayClip clip = RayClip::None;
    double delta_max = 0.0;
    double e_light = 0.0;
    // Argmin-sample intermediates.
    double u = 0.0, v = 0.0;      // reprojected pixel
    int cell_u0 = -1, cell_v0 = -1;
    double fetched_depth = 0.0;
    bool clean = false;           // full in-bounds 4-valid bilinear cell, non-grazing
};

PixelLgiDetail lgi_pixel_detail(const DepthMap& depth, const CameraIntrinsics& K,
                                const LightSpec& light, const LgiConfig& cfg,
                                int px, int py,
                                double z_far = std::numeric_limits<double>::infinity());

struct LightAngles {
    double azimuth = 0.0;
    double elevation = 0.0;
    double distance = 1.0;
    Point3 anchor;

    LightSpec to_light() const { return light_from_angles(azimuth, elevation, distance, anchor); }
};

// Analytic derivative of the soft-mask value at one pixel with respect to
// the light azimuth and elevation, differentiating through delta_max, the
// argmin sample position, the bilinear depth fetch, the relift and both
// elevation angles (the argmin index held fixed). Requires Bilinear
// interpolation. `stable` mirrors PixelLgiDetail::clean and identifies
// pixels where the fixed-argmin chain is locally exact.
struct SoftMaskGradient {
    bool valid = false;
    double soft = 0.0;
    double d_azimuth = 0.0;
    double d_elevation = 0.0;
    int argmin_n = 0;
    RayClip clip = RayClip::None;
    int cell_u0 = -1, cell_v0 = -1;
    bool stable = false;
};

SoftMaskGradient soft_mask_gradient(const DepthMap& depth, const CameraIntrinsics& K,
                                    const LightAngles& angles, const LgiConfig& cfg,
                                    int px, int py);

} // namespace lgimap
