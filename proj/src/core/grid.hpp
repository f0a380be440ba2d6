// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

#include "core/error.hpp"

namespace lgimap {

// Row-major raster with an optional interleaved channel dimension.
// (0,0) is the top-left pixel; integer coordinates are pixel centers.
template <typename T>
class Grid {
public:
    Grid() = default;

    Grid(int width, int height, int channels = 1, T fill = T{})
        : width_(width), height_(height), channels_(channels) {
        if (width < 1 || height < 1 || channels < 1)
            raise(ErrorCode::InvalidArgument, "grid dimensions must be positive");
        data_.assign(static_cast<size_t>(width) * height * channels, fill);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    bool empty() const { return data_.empty(); }
    size_t size() const { return data_.size(); }

    T& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
    const T& at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    bool same_shape(const Grid& other) const {
        return width_ == other.width_ && height_ == other.height_ &&
               channels_ == other.channels_;
    }

    bool operator==(const Grid& other) const {
        return same_shape(other) &&
               std::memcmp(data_.data(), other.data_.data(), size() * sizeof(T)) == 0;
    }

private:
    size_t index(int x, int y, int c) const {
        return (static_cast<size_t>(y) * width_ + x) * channels_ + c;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    std::vector<T> data_;
};

// FNV-1a over the raw bytes of a grid payload. Used for determinism checks
// and run reports; not a cryptographic hash.
inline uint64_t fnv1a64(const void* bytes, size_t n) {
    const auto* p = static_cast<const unsigned char*>(bytes);
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

template <typename T>
uint64_t grid_digest(const Grid<T>& g) {
    return fnv1a64(g.data(), g.size() * sizeof(T));
}

} // namespace lgimap
