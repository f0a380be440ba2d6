// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "core/grid.hpp"

namespace lgimap {

// 8-bit grayscale PNG (color type 0, bit depth 8, no interlace). Anything
// else is rejected with FormatError.
Grid<uint8_t> read_png_gray8(const std::string& path);
void write_png_gray8(const std::string& path, const Grid<uint8_t>& img);

// Mask transport: values in [0,1] quantized to 1/255 steps. Hard masks
// ({0,1}) round trip exactly; soft masks are documented lossy.
Grid<double> read_mask_png(const std::string& path);
void write_mask_png(const std::string& path, const Grid<double>& mask);

Grid<double> png_bytes_to_mask(const Grid<uint8_t>& img);

} // namespace lgimap
