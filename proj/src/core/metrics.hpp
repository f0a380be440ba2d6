// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

#include "core/lgi.hpp"

namespace lgimap {

struct ConfusionCounts {
    uint64_t tp = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;
    uint64_t tn = 0;

    uint64_t total() const { return tp + fp + fn + tn; }
};

// Binarize both masks at threshold (>= threshold is positive) and count.
ConfusionCounts confusion(const ShadowMask& pred, const ShadowMask& gt,
                          double threshold = 0.5);

// tp / (tp + fp + fn)
double iou(const ConfusionCounts& c);

// 1 - (TPR + TNR) / 2
double ber(const ConfusionCounts& c);

// Root mean squared per-pixel-channel difference, optionally restricted to
// the pixels where region != 0.
double rmse(const Grid<float>& a, const Grid<float>& b,
            const Grid<uint8_t>* region = nullptr);
double rmse(const Grid<double>& a, const Grid<double>& b,
            const Grid<uint8_t>* region = nullptr);

} // namespace lgimap
