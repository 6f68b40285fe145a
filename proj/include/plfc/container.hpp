#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "plfc/codec.hpp"
#include "plfc/lzw.hpp"

namespace plfc {

// On-disk layout, all integers big-endian:
//   magic "PLFC" | version u8 | codec u8 | carved_rows u32 | carved_cols u32
//   | orig_rows u32 | orig_cols u32 | payload_bit_length u64 | payload bytes
struct ContainerHeader {
    CodecId codec = CodecId::Store;
    uint32_t carved_rows = 0;
    uint32_t carved_cols = 0;
    uint32_t orig_rows = 0;
    uint32_t orig_cols = 0;
    uint64_t payload_bit_length = 0;

    bool operator==(const ContainerHeader&) const = default;
};

inline constexpr size_t kContainerHeaderSize = 30;
inline constexpr uint8_t kContainerVersion = 1;

struct PackedBits {
    std::vector<uint8_t> bytes;
    uint64_t bit_count = 0;
};

// Variable-width packing for LZW codes: width starts at 9 and bumps to w+1
// right after the code whose arrival grows the decoder-side dictionary to
// 2^w, capping at 16. Both sides track dictionary size the same way, so no
// in-band width signal is needed.
PackedBits pack_codes(const CodeStream& cs);
CodeStream unpack_codes(std::span<const uint8_t> bytes, uint64_t bit_count);

std::vector<uint8_t> write_container(const ContainerHeader& header,
                                     std::span<const uint8_t> payload);
std::pair<ContainerHeader, std::vector<uint8_t>> read_container(std::span<const uint8_t> bytes);

// Validates and decodes the fixed-size header alone; bytes may hold just the
// first 30 bytes of a file.
ContainerHeader parse_header(std::span<const uint8_t> bytes);

} // namespace plfc
