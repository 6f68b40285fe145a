#include "plfc/seam.hpp"

#include <cstdlib>

namespace plfc {

EnergyMap energy_map(const GrayImage& img) {
    EnergyMap em;
    em.rows = img.rows;
    em.cols = img.cols;
    em.energy.resize(img.pixel_count());
    for (int r = 0; r < img.rows; ++r) {
        int up = r > 0 ? r - 1 : 0;
        int down = r + 1 < img.rows ? r + 1 : img.rows - 1;
        for (int c = 0; c < img.cols; ++c) {
            int left = c > 0 ? c - 1 : 0;
            int right = c + 1 < img.cols ? c + 1 : img.cols - 1;
            int dx = int(img.at(r, right)) - int(img.at(r, left));
            int dy = int(img.at(down, c)) - int(img.at(up, c));
            em.energy[size_t(r) * img.cols + c] = uint32_t(dx * dx + dy * dy);
        }
    }
    return em;
}

Seam min_seam(const EnergyMap& em) {
    const int rows = em.rows, cols = em.cols;
    std::vector<uint64_t> cum(size_t(rows) * cols);
    for (int c = 0; c < cols; ++c) cum[c] = em.at(0, c);
    for (int r = 1; r < rows; ++r) {
        const uint64_t* prev = cum.data() + size_t(r - 1) * cols;
        uint64_t* cur = cum.data() + size_t(r) * cols;
        for (int c = 0; c < cols; ++c) {
            uint64_t best = prev[c];
            if (c > 0 && prev[c - 1] < best) best = prev[c - 1];
            if (c + 1 < cols && prev[c + 1] < best) best = prev[c + 1];
            cur[c] = best + em.at(r, c);
        }
    }

    // Scanning left to right with strict less-than picks the leftmost
    // minimum, at the bottom row and at every predecessor choice.
    Seam s;
    s.cols_by_row.resize(rows);
    const uint64_t* bottom = cum.data() + size_t(rows - 1) * cols;
    int c = 0;
    for (int j = 1; j < cols; ++j)
        if (bottom[j] < bottom[c]) c = j;
    s.cols_by_row[rows - 1] = c;
    s.total_energy = bottom[c];

    for (int r = rows - 1; r > 0; --r) {
        const uint64_t* prev = cum.data() + size_t(r - 1) * cols;
        int pick = c > 0 ? c - 1 : c;
        int hi = c + 1 < cols ? c + 1 : c;
        for (int j = pick + 1; j <= hi; ++j)
            if (prev[j] < prev[pick]) pick = j;
        c = pick;
        s.cols_by_row[r - 1] = c;
    }
    return s;
}

GrayImage remove_seam(const GrayImage& img, const Seam& s) {
    if (img.cols < 2) throw Error(Err::TooNarrow, "cannot remove a seam from a 1-column image");
    if (int(s.cols_by_row.size()) != img.rows)
        throw Error(Err::SeamOutOfRange, "seam has " + std::to_string(s.cols_by_row.size()) +
                                             " rows, image has " + std::to_string(img.rows));
    for (int r = 0; r < img.rows; ++r) {
        int c = s.cols_by_row[r];
        if (c < 0 || c >= img.cols)
            throw Error(Err::SeamOutOfRange, "row " + std::to_string(r) + " column " + std::to_string(c));
        if (r > 0 && std::abs(c - s.cols_by_row[r - 1]) > 1)
            throw Error(Err::SeamNotConnected, "jump between rows " + std::to_string(r - 1) +
                                                   " and " + std::to_string(r));
    }

    GrayImage out;
    out.rows = img.rows;
    out.cols = img.cols - 1;
    out.pixels.resize(out.pixel_count());
    for (int r = 0; r < img.rows; ++r) {
        const uint8_t* src = img.pixels.data() + size_t(r) * img.cols;
        uint8_t* dst = out.pixels.data() + size_t(r) * out.cols;
        int cut = s.cols_by_row[r];
        std::copy(src, src + cut, dst);
        std::copy(src + cut + 1, src + img.cols, dst + cut);
    }
    return out;
}

GrayImage carve(const GrayImage& img, int k, BufferMeter* meter) {
    if (k < 0 || k >= img.cols)
        throw Error(Err::TooManySeams, std::to_string(k) + " seams from a " +
                                           std::to_string(img.cols) + "-column image");
    GrayImage out = img;
    if (meter) meter->add(out.pixel_count());
    for (int i = 0; i < k; ++i) {
        uint64_t cells = out.pixel_count();
        if (meter) meter->add(cells * 4); // energy map
        EnergyMap em = energy_map(out);
        if (meter) meter->add(cells * 8 + uint64_t(out.rows) * 4); // DP table + seam
        Seam s = min_seam(em);
        if (meter) meter->release(cells * 8);
        if (meter) meter->add(uint64_t(out.rows) * (out.cols - 1)); // carved copy
        GrayImage next = remove_seam(out, s);
        if (meter) meter->release(cells * 4 + uint64_t(out.rows) * 4 + cells);
        out = std::move(next);
    }
    return out;
}

} // namespace plfc
