#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plfc/error.hpp"

namespace plfc {

enum class CodecId : uint8_t {
    Store = 0,
    Lzw = 1,
    Huffman = 2,
    Lz77 = 3,
};

inline const char* codec_name(CodecId id) {
    switch (id) {
        case CodecId::Store: return "store";
        case CodecId::Lzw: return "lzw";
        case CodecId::Huffman: return "huffman";
        case CodecId::Lz77: return "lz77";
    }
    return "?";
}

inline CodecId codec_from_name(std::string_view name) {
    if (name == "store") return CodecId::Store;
    if (name == "lzw") return CodecId::Lzw;
    if (name == "huffman") return CodecId::Huffman;
    if (name == "lz77") return CodecId::Lz77;
    throw Error(Err::BadCode, "unknown codec '" + std::string(name) + "'");
}

inline CodecId codec_from_id(uint8_t id) {
    if (id > 3) throw Error(Err::BadCode, "unknown codec id " + std::to_string(id));
    return CodecId(id);
}

// Store passes bytes through untouched; it anchors ratio comparisons.
inline std::vector<uint8_t> store_encode(std::span<const uint8_t> data) {
    return {data.begin(), data.end()};
}

inline std::vector<uint8_t> store_decode(std::span<const uint8_t> data) {
    return {data.begin(), data.end()};
}

} // namespace plfc
