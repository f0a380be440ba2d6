// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>

#include "core/grid.hpp"

namespace lgimap {

// Portable float map: "Pf" (1 band) / "PF" (3 bands), text header, 32-bit
// float raster stored bottom-to-top. A negative scale marks a little-endian
// payload. Round trips are bitwise; NaN encodes invalid depth.
struct PfmHeader {
    int bands = 1;
    int width = 0;
    int height = 0;
    double scale = -1.0;
};

std::pair<PfmHeader, Grid<float>> read_pfm(const std::string& path);

// Writes a little-endian PFM (scale -1.0); grid channels must be 1 or 3.
void write_pfm(const std::string& path, const Grid<float>& grid);

} // namespace lgimap
