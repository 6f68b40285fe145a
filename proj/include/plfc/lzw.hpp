#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plfc/error.hpp"

namespace plfc {

// Dictionary codes over the byte alphabet. Entries 0..255 are the single
// bytes; entry 256+i is created by the i-th inserting emission. The
// dictionary freezes at 2^16 entries, there are no resets or clear codes,
// so every code fits in 16 bits.
struct CodeStream {
    std::vector<uint16_t> codes;

    bool operator==(const CodeStream&) const = default;
};

inline constexpr uint32_t kLzwAlphabet = 256;
inline constexpr uint32_t kLzwMaxEntries = 1u << 16;

// One emission, as the classic worked tables show it: the code written out
// and the dictionary entry (if any) created alongside it.
struct LzwEmit {
    uint16_t code = 0;
    bool inserted = false;
    uint32_t entry_index = 0; // valid when inserted
    std::string entry;        // the string stored at entry_index
};

CodeStream lzw_encode(std::span<const uint8_t> data);

// Same encoder, also reporting the per-emission dictionary activity and the
// final dictionary size. Used by tests and diagnostics; output codes are
// identical to lzw_encode.
CodeStream lzw_encode_traced(std::span<const uint8_t> data, std::vector<LzwEmit>& trace,
                             uint32_t& dict_size);

// Exact inverse of lzw_encode, including the case where a code names the
// entry that very step is about to define (resolved as previous phrase plus
// its first byte). Throws BadCode on any code beyond the next unassigned
// index.
std::vector<uint8_t> lzw_decode(const CodeStream& cs);

} // namespace plfc
