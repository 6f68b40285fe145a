#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace plfc {

// Canonical Huffman coding over the byte alphabet. The wire form is a
// 256-entry code length table (0 marks an absent symbol) followed by the
// packed code bits, so the table alone reconstructs the codebook.
struct HuffmanEncoded {
    std::array<uint8_t, 256> lengths{};
    std::vector<uint8_t> bits;
    uint64_t bit_count = 0;
};

HuffmanEncoded huffman_encode(std::span<const uint8_t> data);

std::vector<uint8_t> huffman_decode(const std::array<uint8_t, 256>& lengths,
                                    std::span<const uint8_t> bits, uint64_t bit_count);

} // namespace plfc
