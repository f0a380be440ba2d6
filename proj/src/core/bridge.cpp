// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/bridge.hpp"

#include <algorithm>
#include <cmath>

namespace lgimap {

namespace {

void require_same_dim(const LatentVec& a, const LatentVec& b, const char* what) {
    if (a.size() != b.size())
        raise(ErrorCode::ShapeMismatch, std::string(what) + ": latent dimensions differ");
}

void require_same_shape(const Grid<float>& a, const Grid<float>& b, const char* what) {
    if (!a.same_shape(b))
        raise(ErrorCode::ShapeMismatch, std::string(what) + ": image shapes differ");
}

} // namespace

void WeightedL1Config::validate() const {
    if (!(tau >= 0.0))
        raise(ErrorCode::InvalidArgument, "weighted_l1 requires tau >= 0");
    if (dilation_kernel < 1 || dilation_kernel % 2 == 0)
        raise(ErrorCode::InvalidArgument, "weighted_l1 requires an odd dilation kernel >= 1");
}

LatentVec bridge_sample(const LatentVec& z0, const LatentVec& z1, double t,
                        double sigma, const LatentVec& noise) {
    require_same_dim(z0, z1, "bridge_sample");
    require_same_dim(z0, noise, "bridge_sample");
    if (!(t >= 0.0) || !(t <= 1.0))
        raise(ErrorCode::InvalidArgument, "bridge_sample requires t in [0,1]");
    if (!(sigma >= 0.0))
        raise(ErrorCode::InvalidArgument, "bridge_sample requires sigma >= 0");
    const double amp = sigma * std::sqrt(t * (1.0 - t));
    LatentVec out(z0.size());
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = (1.0 - t) * z0[i] + t * z1[i] + amp * noise[i];
    return out;
}

LatentVec drift_target(const LatentVec& zt, const LatentVec& z1, double t) {
    require_same_dim(zt, z1, "drift_target");
    if (!(t < 1.0))
        raise(ErrorCode::DegenerateTime, "drift_target requires t < 1");
    const double inv = 1.0 / (1.0 - t);
    LatentVec out(zt.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = (z1[i] - zt[i]) * inv;
    return out;
}

LatentVec retrieve_target(const LatentVec& zt, double t, const LatentVec& v) {
    require_same_dim(zt, v, "retrieve_target");
    if (!(t < 1.0))
        raise(ErrorCode::DegenerateTime, "retrieve_target requires t < 1");
    LatentVec out(zt.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - t) * v[i] + zt[i];
    return out;
}

double weighted_l1(const LinearImage& x1_hat, const LinearImage& x1,
                   const LinearImage& x0, const WeightedL1Config& cfg) {
    cfg.validate();
    require_same_shape(x1_hat, x1, "weighted_l1");
    require_same_shape(x1, x0, "weighted_l1");

    const int W = x1.width();
    const int H = x1.height();
    const int C = x1.channels();

    // Change mask: any channel of |x1 - x0| above tau marks the pixel.
    Grid<uint8_t> changed(W, H);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            double peak = 0.0;
            for (int c = 0; c < C; ++c)
                peak = std::max(peak, std::abs(static_cast<double>(x1.at(x, y, c)) - x0.at(x, y, c)));
            changed.at(x, y) = peak > cfg.tau ? 1 : 0;
        }
    }

    const int halo = cfg.dilation_kernel / 2;
    double sum = 0.0;
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            bool w = false;
            for (int dy = -halo; dy <= halo && !w; ++dy) {
                const int yy = y + dy;
                if (yy < 0 || yy >= H) continue;
                for (int dx = -halo; dx <= halo; ++dx) {
                    const int xx = x + dx;
                    if (xx < 0 || xx >= W) continue;
                    if (changed.at(xx, yy)) {
                        w = true;
                        break;
                    }
                }
            }
            if (!w) continue;
            for (int c = 0; c < C; ++c)
                sum += std::abs(static_cast<double>(x1.at(x, y, c)) - x1_hat.at(x, y, c));
        }
    }
    return sum / (static_cast<double>(W) * H * C);
}

double combined_loss(double lz, double lx, double lambda) {
    if (!(lambda >= 0.0))
        raise(ErrorCode::InvalidArgument, "combined_loss requires lambda >= 0");
    return lz + lambda * lx;
}

double latent_matching_loss(std::span<const BridgeBatchItem> batch, double sigma,
                            const DriftFn& drift) {
    if (batch.empty())
        raise(ErrorCode::InvalidArgument, "latent_matching_loss requires a nonempty batch");
    double sum = 0.0;
    size_t count = 0;
    for (const auto& item : batch) {
        const LatentVec zt = bridge_sample(item.z0, item.z1, item.t, sigma, item.noise);
        const LatentVec target = drift_target(zt, item.z1, item.t);
        const LatentVec predicted = drift(zt, item.t);
        require_same_dim(target, predicted, "latent_matching_loss");
        for (size_t i = 0; i < target.size(); ++i) {
            const double e = target[i] - predicted[i];
            sum += e * e;
        }
        count += target.size();
    }
    return sum / static_cast<double>(count);
}

double mask_bce(const ShadowMask& pred, const ShadowMask& gt) {
    if (!pred.values.same_shape(gt.values))
        raise(ErrorCode::ShapeMismatch, "mask_bce: mask shapes differ");
    constexpr double eps = 1e-7;
    double sum = 0.0;
    const size_t n = pred.values.size();
    const double* p = pred.values.data();
    const double* g = gt.values.data();
    for (size_t i = 0; i < n; ++i) {
        const double pc = std::clamp(p[i], eps, 1.0 - eps);
        sum += g[i] * std::log(pc) + (1.0 - g[i]) * std::log(1.0 - pc);
    }
    return -sum / static_cast<double>(n);
}

double mask_iou_loss(const ShadowMask& pred, const ShadowMask& gt) {
    if (!pred.values.same_shape(gt.values))
        raise(ErrorCode::ShapeMismatch, "mask_iou_loss: mask shapes differ");
    double inter = 0.0;
    double uni = 0.0;
    const size_t n = pred.values.size();
    const double* p = pred.values.data();
    const double* g = gt.values.data();
    for (size_t i = 0; i < n; ++i) {
        inter += p[i] * g[i];
        uni += p[i] + g[i] - p[i] * g[i];
    }
    if (uni == 0.0)
        raise(ErrorCode::DegenerateDenominator, "mask_iou_loss: union expectation is zero");
    return 1.0 - inter / uni;
}

LinearImage compose_lights(std::span<const LinearImage> contributions) {
    if (contributions.empty())
        raise(ErrorCode::InvalidArgument, "compose_lights requires at least one image");
    for (size_t i = 1; i < contributions.size(); ++i)
        require_same_shape(contributions[0], contributions[i], "compose_lights");
    LinearImage out = contributions[0];
    for (size_t i = 1; i < contributions.size(); ++i) {
        const float* src = contributions[i].data();
        float* dst = out.data();
        const size_t n = out.size();
        for (size_t k = 0; k < n; ++k) dst[k] += src[k];
    }
    return out;
}

LinearImage clamp_display(const LinearImage& img) {
    LinearImage out = img;
    float* p = out.data();
    for (size_t i = 0; i < out.size(); ++i) p[i] = std::clamp(p[i], 0.0f, 1.0f);
    return out;
}

} // namespace lgimap
