#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace plfc {

// Triple token: copy `length` bytes from `offset` back, then append `next`.
// offset == 0 and length == 0 together mean a bare literal.
struct Lz77Token {
    uint16_t offset = 0;
    uint8_t length = 0;
    uint8_t next = 0;

    bool operator==(const Lz77Token&) const = default;
};

inline constexpr size_t kLz77Window = 4096;
inline constexpr size_t kLz77Lookahead = 18;

std::vector<Lz77Token> lz77_encode(std::span<const uint8_t> data,
                                   size_t window = kLz77Window,
                                   size_t lookahead = kLz77Lookahead);

std::vector<uint8_t> lz77_decode(std::span<const Lz77Token> tokens);

// Wire form: offset 2 bytes big-endian, length 1 byte, literal 1 byte.
std::vector<uint8_t> lz77_pack(std::span<const Lz77Token> tokens);
std::vector<Lz77Token> lz77_unpack(std::span<const uint8_t> bytes);

} // namespace plfc
