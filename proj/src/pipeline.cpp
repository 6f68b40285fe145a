#include "plfc/pipeline.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>

#include "plfc/bitio.hpp"
#include "plfc/error.hpp"
#include "plfc/huffman.hpp"
#include "plfc/lz77.hpp"
#include "plfc/lzw.hpp"
#include "plfc/seam.hpp"

namespace plfc {
namespace {

void meter_add(BufferMeter* m, uint64_t n) {
    if (m) m->add(n);
}

// Decoder-visible LZW dictionary entries for a given code count.
uint64_t lzw_entries(size_t ncodes) {
    uint64_t inserted = ncodes > 0 ? uint64_t(ncodes) - 1 : 0;
    return kLzwAlphabet + std::min<uint64_t>(inserted, kLzwMaxEntries - kLzwAlphabet);
}

} // namespace

int resolve_seams(const CompressionSpec& spec, int cols) {
    int k;
    if (spec.seams >= 0) {
        k = spec.seams;
    } else {
        if (!(spec.seam_frac >= 0.0 && spec.seam_frac < 1.0))
            throw Error(Err::TooManySeams, "seam fraction must be in [0,1)");
        k = int(std::floor(spec.seam_frac * cols));
    }
    if (k < 0 || k >= cols)
        throw Error(Err::TooManySeams, std::to_string(k) + " seams from " + std::to_string(cols) +
                                           " columns");
    return k;
}

Payload encode_payload(CodecId codec, std::span<const uint8_t> data, BufferMeter* meter) {
    Payload p;
    switch (codec) {
        case CodecId::Store:
            p.bytes = store_encode(data);
            p.bit_count = uint64_t(p.bytes.size()) * 8;
            meter_add(meter, p.bytes.size());
            break;
        case CodecId::Lzw: {
            CodeStream cs = lzw_encode(data);
            meter_add(meter, uint64_t(cs.codes.size()) * 2 + lzw_entries(cs.codes.size()) * 8);
            PackedBits packed = pack_codes(cs);
            meter_add(meter, packed.bytes.size());
            p.bytes = std::move(packed.bytes);
            p.bit_count = packed.bit_count;
            break;
        }
        case CodecId::Huffman: {
            HuffmanEncoded enc = huffman_encode(data);
            meter_add(meter, 256 * 8 + 256 + enc.bits.size());
            p.bytes.assign(enc.lengths.begin(), enc.lengths.end());
            p.bytes.insert(p.bytes.end(), enc.bits.begin(), enc.bits.end());
            p.bit_count = 2048 + enc.bit_count;
            break;
        }
        case CodecId::Lz77: {
            std::vector<Lz77Token> tokens = lz77_encode(data);
            meter_add(meter, uint64_t(data.size()) * 4 + uint64_t(tokens.size()) * 4);
            p.bytes = lz77_pack(tokens);
            p.bit_count = uint64_t(p.bytes.size()) * 8;
            meter_add(meter, p.bytes.size());
            break;
        }
    }
    return p;
}

std::vector<uint8_t> decode_payload(CodecId codec, std::span<const uint8_t> bytes,
                                    uint64_t bit_count, BufferMeter* meter) {
    if (codec == CodecId::Lzw) {
        CodeStream cs = unpack_codes(bytes, bit_count);
        meter_add(meter, uint64_t(cs.codes.size()) * 2 + lzw_entries(cs.codes.size()) * 10);
        std::vector<uint8_t> out = lzw_decode(cs);
        meter_add(meter, out.size());
        return out;
    }
    if (codec == CodecId::Huffman) {
        if (bit_count < 2048)
            throw Error(Err::TruncatedPayload, "payload too short for the 256-byte length table");
        std::array<uint8_t, 256> lengths;
        std::copy(bytes.begin(), bytes.begin() + 256, lengths.begin());
        // The bitstream begins byte-aligned right after the table, but pad
        // bits past the declared end must still be zero.
        BitReader(bytes.subspan(256), bit_count - 2048).check_padding();
        meter_add(meter, 256 * 8 + 256);
        std::vector<uint8_t> out = huffman_decode(lengths, bytes.subspan(256), bit_count - 2048);
        meter_add(meter, out.size());
        return out;
    }
    // Store and LZ77 are byte aligned.
    if (bit_count % 8 != 0)
        throw Error(Err::TruncatedPayload, "byte-aligned codec with fractional bit length");
    if (bit_count / 8 != bytes.size())
        throw Error(Err::TruncatedPayload, "payload length disagrees with bit length");
    if (codec == CodecId::Lz77) {
        std::vector<Lz77Token> tokens = lz77_unpack(bytes);
        meter_add(meter, uint64_t(tokens.size()) * 4);
        std::vector<uint8_t> out = lz77_decode(tokens);
        meter_add(meter, out.size());
        return out;
    }
    std::vector<uint8_t> out = store_decode(bytes);
    meter_add(meter, out.size());
    return out;
}

std::vector<uint8_t> compress(const GrayImage& img, const CompressionSpec& spec,
                              BufferMeter* meter) {
    int k = resolve_seams(spec, img.cols);
    GrayImage carved = carve(img, k, meter);
    std::vector<uint8_t> data = flatten(carved);
    meter_add(meter, data.size());

    Payload payload = encode_payload(spec.codec, data, meter);

    ContainerHeader h;
    h.codec = spec.codec;
    h.carved_rows = uint32_t(carved.rows);
    h.carved_cols = uint32_t(carved.cols);
    h.orig_rows = uint32_t(img.rows);
    h.orig_cols = uint32_t(img.cols);
    h.payload_bit_length = payload.bit_count;
    std::vector<uint8_t> out = write_container(h, payload.bytes);
    meter_add(meter, out.size());
    return out;
}

std::pair<ContainerHeader, GrayImage> decode_container_image(std::span<const uint8_t> bytes,
                                                             BufferMeter* meter) {
    meter_add(meter, bytes.size());
    auto [h, payload] = read_container(bytes);
    meter_add(meter, payload.size());
    std::vector<uint8_t> data = decode_payload(h.codec, payload, h.payload_bit_length, meter);
    if (h.carved_rows > uint32_t(INT_MAX) || h.carved_cols > uint32_t(INT_MAX))
        throw Error(Err::DimensionMismatch, "carved dimensions overflow");
    GrayImage img = unflatten(data, int(h.carved_rows), int(h.carved_cols));
    meter_add(meter, img.pixel_count());
    return {h, std::move(img)};
}

std::string decompress(std::span<const uint8_t> bytes, BufferMeter* meter) {
    auto [h, img] = decode_container_image(bytes, meter);
    std::string csv = to_csv(img);
    meter_add(meter, csv.size());
    return csv;
}

double compression_ratio(uint64_t original_bytes, uint64_t compressed_bytes) {
    if (original_bytes == 0 || compressed_bytes == 0)
        throw Error(Err::ZeroSize, "sizes must be positive");
    return double(original_bytes) / double(compressed_bytes);
}

std::string format_ratio(double ratio) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f:1", ratio);
    return buf;
}

} // namespace plfc
