#include "plfc/image.hpp"

#include <charconv>
#include <cstdio>

namespace plfc {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::string pos_msg(int line, int col, const std::string& what) {
    return "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what;
}

} // namespace

GrayImage parse_csv(std::string_view text) {
    GrayImage img;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (trim(line).empty()) continue;

        int col_no = 0;
        size_t fpos = 0;
        while (true) {
            size_t comma = line.find(',', fpos);
            std::string_view field = trim(line.substr(fpos, comma == std::string_view::npos ? line.size() - fpos : comma - fpos));
            ++col_no;

            long value = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (field.empty() || ec == std::errc::invalid_argument || ptr != field.data() + field.size())
                throw Error(Err::BadPixel, pos_msg(line_no, col_no, "'" + std::string(field) + "' is not a decimal integer"));
            if (ec == std::errc::result_out_of_range || value < 0 || value > 255)
                throw Error(Err::BadPixel, pos_msg(line_no, col_no, "pixel value " + std::string(field) + " outside [0,255]"));
            img.pixels.push_back(uint8_t(value));

            if (comma == std::string_view::npos) break;
            fpos = comma + 1;
        }

        if (img.rows == 0) {
            img.cols = col_no;
        } else if (col_no != img.cols) {
            throw Error(Err::RaggedRows, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(img.cols) + " fields, got " + std::to_string(col_no));
        }
        ++img.rows;
    }
    if (img.rows == 0) throw Error(Err::EmptyInput, "no non-empty lines");
    return img;
}

std::string to_csv(const GrayImage& img) {
    std::string out;
    out.reserve(img.pixel_count() * 4);
    char buf[8];
    for (int r = 0; r < img.rows; ++r) {
        for (int c = 0; c < img.cols; ++c) {
            int n = std::snprintf(buf, sizeof buf, "%u", unsigned(img.at(r, c)));
            out.append(buf, n);
            out.push_back(c + 1 == img.cols ? '\n' : ',');
        }
    }
    return out;
}

std::vector<uint8_t> flatten(const GrayImage& img) {
    return img.pixels;
}

GrayImage unflatten(std::span<const uint8_t> data, int rows, int cols) {
    if (rows < 1 || cols < 1 || data.size() != size_t(rows) * cols)
        throw Error(Err::DimensionMismatch, std::to_string(data.size()) + " bytes cannot fill " +
                                                std::to_string(rows) + "x" + std::to_string(cols));
    GrayImage img;
    img.rows = rows;
    img.cols = cols;
    img.pixels.assign(data.begin(), data.end());
    return img;
}

} // namespace plfc
