#pragma once

#include <algorithm>
#include <cstdint>

namespace plfc {

// Logical buffer accounting. The pipeline reports memory as the peak of the
// bytes it holds in its own working buffers (pixel grids, energy and DP
// arrays, dictionaries, code and payload buffers), not as OS resident size,
// so the number is identical on every run and host.
struct BufferMeter {
    uint64_t current = 0;
    uint64_t peak = 0;

    void add(uint64_t bytes) {
        current += bytes;
        peak = std::max(peak, current);
    }
    void release(uint64_t bytes) { current = bytes > current ? 0 : current - bytes; }
};

} // namespace plfc
