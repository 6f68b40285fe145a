#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plfc/codec.hpp"
#include "plfc/container.hpp"
#include "plfc/image.hpp"
#include "plfc/metrics.hpp"

namespace plfc {

// Seam budget either as an absolute count (seams >= 0) or as a fraction of
// the image width. Defaults: carve 20% of columns, encode with LZW.
struct CompressionSpec {
    int seams = -1;
    double seam_frac = 0.20;
    CodecId codec = CodecId::Lzw;
};

int resolve_seams(const CompressionSpec& spec, int cols);

std::vector<uint8_t> compress(const GrayImage& img, const CompressionSpec& spec,
                              BufferMeter* meter = nullptr);

// Decodes a container back to the carved image. Seam carving is lossy, so
// the original width is never reconstructed.
std::pair<ContainerHeader, GrayImage> decode_container_image(std::span<const uint8_t> bytes,
                                                             BufferMeter* meter = nullptr);

// Carved image as canonical CSV text.
std::string decompress(std::span<const uint8_t> bytes, BufferMeter* meter = nullptr);

double compression_ratio(uint64_t original_bytes, uint64_t compressed_bytes);
std::string format_ratio(double ratio); // "2.00:1"

// Codec payload wire form, shared by compress/decompress and tests.
struct Payload {
    std::vector<uint8_t> bytes;
    uint64_t bit_count = 0;
};

Payload encode_payload(CodecId codec, std::span<const uint8_t> data, BufferMeter* meter = nullptr);
std::vector<uint8_t> decode_payload(CodecId codec, std::span<const uint8_t> bytes,
                                    uint64_t bit_count, BufferMeter* meter = nullptr);

} // namespace plfc
