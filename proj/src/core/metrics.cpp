// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/metrics.hpp"

#include <cmath>

namespace lgimap {

ConfusionCounts confusion(const ShadowMask& pred, const ShadowMask& gt, double threshold) {
    if (!pred.values.same_shape(gt.values))
        raise(ErrorCode::ShapeMismatch, "confusion: mask shapes differ");
    if (!(threshold >= 0.0) || !(threshold <= 1.0))
        raise(ErrorCode::InvalidArgument, "confusion threshold must lie in [0,1]");
    ConfusionCounts c;
    const size_t n = pred.values.size();
    const double* p = pred.values.data();
    const double* g = gt.values.data();
    for (size_t i = 0; i < n; ++i) {
        const bool pp = p[i] >= threshold;
        const bool gg = g[i] >= threshold;
        if (pp && gg) ++c.tp;
        else if (pp && !gg) ++c.fp;
        else if (!pp && gg) ++c.fn;
        else ++c.tn;
    }
    return c;
}

double iou(const ConfusionCounts& c) {
    const uint64_t denom = c.tp + c.fp + c.fn;
    if (denom == 0)
        raise(ErrorCode::DegenerateDenominator, "iou undefined: empty union");
    return static_cast<double>(c.tp) / static_cast<double>(denom);
}

double ber(const ConfusionCounts& c) {
    if (c.tp + c.fn == 0 || c.fp + c.tn == 0)
        raise(ErrorCode::DegenerateClass, "ber undefined: one class is empty");
    const double tpr = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    const double tnr = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    return 1.0 - 0.5 * (tpr + tnr);
}

namespace {

template <typename T>
double rmse_impl(const Grid<T>& a, const Grid<T>& b, const Grid<uint8_t>* region) {
    if (!a.same_shape(b))
        raise(ErrorCode::ShapeMismatch, "rmse: image shapes differ");
    if (region &&
        (region->width() != a.width() || region->height() != a.height()))
        raise(ErrorCode::ShapeMismatch, "rmse: region shape differs");

    double sum = 0.0;
    size_t count = 0;
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            if (region && !region->at(x, y)) continue;
            for (int c = 0; c < a.channels(); ++c) {
                const double d = static_cast<double>(a.at(x, y, c)) - b.at(x, y, c);
                sum += d * d;
                ++count;
            }
        }
    }
    if (count == 0)
        raise(ErrorCode::DegenerateRegion, "rmse undefined: empty region");
    return std::sqrt(sum / static_cast<double>(count));
}

} // namespace

double rmse(const Grid<float>& a, const Grid<float>& b, const Grid<uint8_t>* region) {
    return rmse_impl(a, b, region);
}

double rmse(const Grid<double>& a, const Grid<double>& b, const Grid<uint8_t>* region) {
    return rmse_impl(a, b, region);
}

} // namespace lgimap
