#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plfc/error.hpp"

namespace plfc {

// Rectangular 8-bit grayscale image, pixels stored row-major.
struct GrayImage {
    int rows = 0;
    int cols = 0;
    std::vector<uint8_t> pixels; // rows * cols entries

    uint8_t at(int r, int c) const { return pixels[size_t(r) * cols + c]; }
    uint8_t& at(int r, int c) { return pixels[size_t(r) * cols + c]; }
    size_t pixel_count() const { return size_t(rows) * cols; }

    bool operator==(const GrayImage&) const = default;
};

// Parses the CSV pixel grid format: one row per non-empty line, fields are
// decimal integers in [0,255]. Whitespace around fields is tolerated, blank
// lines are skipped. Line/column positions in errors are 1-based and count
// physical lines.
//
// Throws: EmptyInput, RaggedRows, BadPixel.
GrayImage parse_csv(std::string_view text);

// Canonical CSV form: bare decimal values, single commas, no spaces, a
// newline after every row including the last. parse_csv(to_csv(img)) == img.
std::string to_csv(const GrayImage& img);

// Row-major pixel bytes.
std::vector<uint8_t> flatten(const GrayImage& img);

// Inverse of flatten. Throws DimensionMismatch if data.size() != rows*cols.
GrayImage unflatten(std::span<const uint8_t> data, int rows, int cols);

} // namespace plfc
