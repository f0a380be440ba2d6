// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/pfm.hpp"

#include <bit>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace lgimap {

namespace {

[[noreturn]] void format_error(const std::string& path, size_t offset, const std::string& what) {
    raise(ErrorCode::FormatError,
          path + ": " + what + " at byte " + std::to_string(offset));
}

std::vector<char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorCode::IoError, "cannot open " + path);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    return bytes;
}

struct Cursor {
    const std::vector<char>& bytes;
    const std::string& path;
    size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }

    // One whitespace-delimited token followed by exactly one whitespace byte.
    std::string token() {
        const size_t start = pos;
        std::string t;
        while (!eof() && !std::isspace(static_cast<unsigned char>(bytes[pos])))
            t.push_back(bytes[pos++]);
        if (t.empty()) format_error(path, start, "expected header token");
        if (eof()) format_error(path, pos, "missing whitespace after header token");
        ++pos; // consume the single separator
        return t;
    }
};

uint32_t bswap32(uint32_t v) {
    return ((v & 0x000000ffu) << 24) | ((v & 0x0000ff00u) << 8) |
           ((v & 0x00ff0000u) >> 8) | ((v & 0xff000000u) >> 24);
}

} // namespace

std::pair<PfmHeader, Grid<float>> read_pfm(const std::string& path) {
    const std::vector<char> bytes = read_file(path);
    Cursor cur{bytes, path};

    PfmHeader header;
    const std::string magic = cur.token();
    if (magic == "Pf") header.bands = 1;
    else if (magic == "PF") header.bands = 3;
    else format_error(path, 0, "bad magic '" + magic + "'");

    auto parse_int = [&](const char* what) {
        const size_t at = cur.pos;
        const std::string t = cur.token();
        char* end = nullptr;
        const long v = std::strtol(t.c_str(), &end, 10);
        if (end == t.c_str() || *end != '\0' || v < 1)
            format_error(path, at, std::string("bad ") + what + " '" + t + "'");
        return static_cast<int>(v);
    };
    header.width = parse_int("width");
    header.height = parse_int("height");

    {
        const size_t at = cur.pos;
        const std::string t = cur.token();
        char* end = nullptr;
        header.scale = std::strtod(t.c_str(), &end);
        if (end == t.c_str() || *end != '\0')
            format_error(path, at, "bad scale '" + t + "'");
        if (header.scale == 0.0)
            format_error(path, at, "zero scale");
    }

    const size_t payload_at = cur.pos;
    const size_t expected =
        static_cast<size_t>(header.width) * header.height * header.bands * 4;
    const size_t available = bytes.size() - payload_at;
    if (available < expected)
        format_error(path, bytes.size(),
                     "truncated payload (" + std::to_string(available) + " of " +
                         std::to_string(expected) + " bytes)");
    if (available > expected)
        format_error(path, payload_at + expected, "trailing bytes after payload");

    const bool file_little = header.scale < 0.0;
    const bool host_little = std::endian::native == std::endian::little;
    const bool swap = file_little != host_little;

    Grid<float> grid(header.width, header.height, header.bands);
    const char* src = bytes.data() + payload_at;
    for (int row = 0; row < header.height; ++row) {
        // PFM rows run bottom-to-top.
        const int y = header.height - 1 - row;
        for (int x = 0; x < header.width; ++x) {
            for (int c = 0; c < header.bands; ++c) {
                uint32_t bits;
                std::memcpy(&bits, src, 4);
                src += 4;
                if (swap) bits = bswap32(bits);
                grid.at(x, y, c) = std::bit_cast<float>(bits);
            }
        }
    }
    return {header, std::move(grid)};
}

void write_pfm(const std::string& path, const Grid<float>& grid) {
    if (grid.empty())
        raise(ErrorCode::InvalidArgument, "write_pfm: empty grid");
    if (grid.channels() != 1 && grid.channels() != 3)
        raise(ErrorCode::InvalidArgument, "write_pfm: grid must have 1 or 3 channels");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        raise(ErrorCode::IoError, "cannot write " + path);

    out << (grid.channels() == 1 ? "Pf" : "PF") << '\n'
        << grid.width() << ' ' << grid.height() << '\n'
        << "-1.0" << '\n';

    const bool host_little = std::endian::native == std::endian::little;
    std::vector<char> row(static_cast<size_t>(grid.width()) * grid.channels() * 4);
    for (int y = grid.height() - 1; y >= 0; --y) {
        char* dst = row.data();
        for (int x = 0; x < grid.width(); ++x) {
            for (int c = 0; c < grid.channels(); ++c) {
                uint32_t bits = std::bit_cast<uint32_t>(grid.at(x, y, c));
                if (!host_little) bits = bswap32(bits);
                std::memcpy(dst, &bits, 4);
                dst += 4;
            }
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out)
        raise(ErrorCode::IoError, "write failed for " + path);
}

} // namespace lgimap
