// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "core/grid.hpp"
#include "core/lgi.hpp"

namespace lgimap {

using LatentVec = std::vector<double>;

struct BridgeParams {
    double sigma = 0.0; // >= 0
};

struct WeightedL1Config {
    double tau = 0.01;
    int dilation_kernel = 17; // odd, >= 1

    void validate() const;
};

// Linear-radiance RGB raster (channels = 3, entries >= 0 by convention).
using LinearImage = Grid<float>;

// (1-t) z0 + t z1 + sigma sqrt(t (1-t)) noise, with noise ~ N(0, I)
// supplied by the caller.
LatentVec bridge_sample(const LatentVec& z0, const LatentVec& z1, double t,
                        double sigma, const LatentVec& noise);

// (z1 - zt) / (1 - t); the exact drift making retrieve_target recover z1.
LatentVec drift_target(const LatentVec& zt, const LatentVec& z1, double t);

// (1 - t) v + zt
LatentVec retrieve_target(const LatentVec& zt, double t, const LatentVec& v);

// Weighted L1 over pixel-channel slots: weights are the tau-thresholded
// max-channel |x1 - x0| dilated by a k x k all-ones kernel (zero padded);
// the mean runs over every slot of the image.
double weighted_l1(const LinearImage& x1_hat, const LinearImage& x1,
                   const LinearImage& x0, const WeightedL1Config& cfg);

// lz + lambda * lx
double combined_loss(double lz, double lx, double lambda);

// Mean squared drift-regression error over a batch of (z0, z1, t, noise)
// tuples with a caller-supplied drift function.
struct BridgeBatchItem {
    LatentVec z0;
    LatentVec z1;
    double t = 0.0;
    LatentVec noise;
};
using DriftFn = std::function<LatentVec(const LatentVec& zt, double t)>;
double latent_matching_loss(std::span<const BridgeBatchItem> batch, double sigma,
                            const DriftFn& drift);

// -mean(gt log p + (1-gt) log(1-p)) with p clamped to [1e-7, 1-1e-7].
double mask_bce(const ShadowMask& pred, const ShadowMask& gt);

// 1 - mean(p g) / mean(p + g - p g)
double mask_iou_loss(const ShadowMask& pred, const ShadowMask& gt);

// Elementwise sum of per-light linear-radiance contributions.
LinearImage compose_lights(std::span<const LinearImage> contributions);

// Optional display transform: clamp to [0,1]. Kept separate from
// compose_lights, which must stay in linear radiance.
LinearImage clamp_display(const LinearImage& img);

} // namespace lgimap
