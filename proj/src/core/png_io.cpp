// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/png_io.hpp"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

namespace lgimap {

namespace {

constexpr unsigned char kSignature[8] = {137, 80, 78, 71, 13, 10, 26, 10};

[[noreturn]] void format_error(const std::string& path, const std::string& what) {
    raise(ErrorCode::FormatError, path + ": " + what);
}

uint32_t read_be32(const unsigned char* p) {
    return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
           (static_cast<uint32_t>(p[2]) << 8) | static_cast<uint32_t>(p[3]);
}

void put_be32(std::vector<unsigned char>& out, uint32_t v) {
    out.push_back(static_cast<unsigned char>(v >> 24));
    out.push_back(static_cast<unsigned char>(v >> 16));
    out.push_back(static_cast<unsigned char>(v >> 8));
    out.push_back(static_cast<unsigned char>(v));
}

void append_chunk(std::vector<unsigned char>& out, const char type[4],
                  const unsigned char* data, size_t len) {
    put_be32(out, static_cast<uint32_t>(len));
    const size_t type_at = out.size();
    out.insert(out.end(), type, type + 4);
    if (len) out.insert(out.end(), data, data + len);
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, out.data() + type_at, static_cast<uInt>(4 + len));
    put_be32(out, static_cast<uint32_t>(crc));
}

int paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a);
    const int pb = std::abs(p - b);
    const int pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

} // namespace

Grid<uint8_t> read_png_gray8(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorCode::IoError, "cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kSignature, 8) != 0)
        format_error(path, "not a PNG file");

    uint32_t width = 0, height = 0;
    bool have_ihdr = false;
    std::vector<unsigned char> idat;

    size_t pos = 8;
    while (pos + 8 <= bytes.size()) {
        const uint32_t len = read_be32(&bytes[pos]);
        if (pos + 12 + static_cast<size_t>(len) > bytes.size())
            format_error(path, "truncated chunk");
        const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
        const unsigned char* data = &bytes[pos + 8];

        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13) format_error(path, "bad IHDR length");
            width = read_be32(data);
            height = read_be32(data + 4);
            const int bit_depth = data[8];
            const int color_type = data[9];
            const int interlace = data[12];
            if (color_type != 0)
                format_error(path, "non-grayscale PNG (color type " +
                                       std::to_string(color_type) + ")");
            if (bit_depth != 8)
                format_error(path, "unsupported bit depth " + std::to_string(bit_depth));
            if (interlace != 0)
                format_error(path, "interlaced PNG not supported");
            have_ihdr = true;
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            break;
        }
        pos += 12 + len;
    }
    if (!have_ihdr || width == 0 || height == 0)
        format_error(path, "missing or empty IHDR");
    if (idat.empty())
        format_error(path, "missing IDAT");

    const size_t stride = static_cast<size_t>(width) + 1; // filter byte + row
    std::vector<unsigned char> raw(stride * height);
    uLongf raw_len = static_cast<uLongf>(raw.size());
    if (uncompress(raw.data(), &raw_len, idat.data(), static_cast<uLong>(idat.size())) != Z_OK ||
        raw_len != raw.size())
        format_error(path, "corrupt IDAT stream");

    Grid<uint8_t> img(static_cast<int>(width), static_cast<int>(height));
    std::vector<unsigned char> prev(width, 0);
    for (uint32_t y = 0; y < height; ++y) {
        const unsigned char filter = raw[y * stride];
        unsigned char* row = &raw[y * stride + 1];
        for (uint32_t x = 0; x < width; ++x) {
            const int a = x > 0 ? row[x - 1] : 0;
            const int b = prev[x];
            const int c = x > 0 ? prev[x - 1] : 0;
            int v = row[x];
            switch (filter) {
                case 0: break;
                case 1: v += a; break;
                case 2: v += b; break;
                case 3: v += (a + b) / 2; break;
                case 4: v += paeth(a, b, c); break;
                default: format_error(path, "unknown filter " + std::to_string(filter));
            }
            row[x] = static_cast<unsigned char>(v & 0xff);
            img.at(static_cast<int>(x), static_cast<int>(y)) = row[x];
        }
        std::memcpy(prev.data(), row, width);
    }
    return img;
}

void write_png_gray8(const std::string& path, const Grid<uint8_t>& img) {
    if (img.empty())
        raise(ErrorCode::InvalidArgument, "write_png_gray8: empty image");
    if (img.channels() != 1)
        raise(ErrorCode::InvalidArgument, "write_png_gray8: expected a single channel");

    const uint32_t width = static_cast<uint32_t>(img.width());
    const uint32_t height = static_cast<uint32_t>(img.height());

    std::vector<unsigned char> raw;
    raw.reserve((static_cast<size_t>(width) + 1) * height);
    for (uint32_t y = 0; y < height; ++y) {
        raw.push_back(0); // filter: none
        for (uint32_t x = 0; x < width; ++x)
            raw.push_back(img.at(static_cast<int>(x), static_cast<int>(y)));
    }

    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<unsigned char> compressed(bound);
    if (compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()),
                  Z_DEFAULT_COMPRESSION) != Z_OK)
        raise(ErrorCode::Internal, "deflate failed for " + path);
    compressed.resize(bound);

    std::vector<unsigned char> out;
    out.insert(out.end(), kSignature, kSignature + 8);
    unsigned char ihdr[13];
    ihdr[0] = static_cast<unsigned char>(width >> 24);
    ihdr[1] = static_cast<unsigned char>(width >> 16);
    ihdr[2] = static_cast<unsigned char>(width >> 8);
    ihdr[3] = static_cast<unsigned char>(width);
    ihdr[4] = static_cast<unsigned char>(height >> 24);
    ihdr[5] = static_cast<unsigned char>(height >> 16);
    ihdr[6] = static_cast<unsigned char>(height >> 8);
    ihdr[7] = static_cast<unsigned char>(height);
    ihdr[8] = 8;  // bit depth
    ihdr[9] = 0;  // grayscale
    ihdr[10] = 0; // compression
    ihdr[11] = 0; // filter
    ihdr[12] = 0; // no interlace
    append_chunk(out, "IHDR", ihdr, sizeof(ihdr));
    append_chunk(out, "IDAT", compressed.data(), compressed.size());
    append_chunk(out, "IEND", nullptr, 0);

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        raise(ErrorCode::IoError, "cannot write " + path);
    f.write(reinterpret_cast<const char*>(out.data()),
            static_cast<std::streamsize>(out.size()));
    if (!f)
        raise(ErrorCode::IoError, "write failed for " + path);
}

Grid<double> png_bytes_to_mask(const Grid<uint8_t>& img) {
    Grid<double> mask(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            mask.at(x, y) = img.at(x, y) / 255.0;
    return mask;
}

Grid<double> read_mask_png(const std::string& path) {
    return png_bytes_to_mask(read_png_gray8(path));
}

void write_mask_png(const std::string& path, const Grid<double>& mask) {
    Grid<uint8_t> img(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            const double v = std::clamp(mask.at(x, y), 0.0, 1.0);
            img.at(x, y) = static_cast<uint8_t>(std::lround(v * 255.0));
        }
    }
    write_png_gray8(path, img);
}

} // namespace lgimap
