#pragma once

#include <cstdint>
#include <vector>

#include "plfc/image.hpp"
#include "plfc/metrics.hpp"

namespace plfc {

// Per-pixel energy over an image, same dimensions, row-major.
struct EnergyMap {
    int rows = 0;
    int cols = 0;
    std::vector<uint32_t> energy;

    uint32_t at(int r, int c) const { return energy[size_t(r) * cols + c]; }
};

// Vertical 8-connected path, one column per row.
struct Seam {
    std::vector<int> cols_by_row;
    uint64_t total_energy = 0;
};

// Dual-gradient energy: squared central differences in x and y, with
// out-of-range neighbors clamped to the border pixel. Integer exact,
// max value 2*255^2. A pixel in a locally constant neighborhood gets 0.
EnergyMap energy_map(const GrayImage& img);

// Minimum-total-energy vertical seam by dynamic programming over
// cum(r,c) = e(r,c) + min(cum(r-1,c-1), cum(r-1,c), cum(r-1,c+1)).
// Ties resolve to the smallest column index, both when choosing the
// bottom-row start and at every backtrack step, so the result is a pure
// function of the map.
Seam min_seam(const EnergyMap& em);

// Deletes seam column from every row. Throws TooNarrow for 1-column images,
// SeamOutOfRange / SeamNotConnected for invalid seams.
GrayImage remove_seam(const GrayImage& img, const Seam& s);

// k iterations of energy_map -> min_seam -> remove_seam, recomputing the
// energy after every removal. k = 0 returns the image unchanged.
// Throws TooManySeams unless 0 <= k < img.cols.
// The meter, when given, accounts the working buffers of each iteration;
// the returned image's bytes are left registered for the caller to release.
GrayImage carve(const GrayImage& img, int k, BufferMeter* meter = nullptr);

} // namespace plfc
