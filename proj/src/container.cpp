#include "plfc/container.hpp"

#include <algorithm>

#include "plfc/bitio.hpp"
#include "plfc/error.hpp"

namespace plfc {
namespace {

void put32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 3; i >= 0; --i) out.push_back(uint8_t(v >> (i * 8)));
}

void put64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 7; i >= 0; --i) out.push_back(uint8_t(v >> (i * 8)));
}

uint32_t get32(std::span<const uint8_t> b, size_t at) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | b[at + i];
    return v;
}

uint64_t get64(std::span<const uint8_t> b, size_t at) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | b[at + i];
    return v;
}

void validate(const ContainerHeader& h) {
    if (h.carved_rows < 1 || h.carved_cols < 1)
        throw Error(Err::LengthMismatch, "carved dimensions must be >= 1");
    if (h.carved_cols > h.orig_cols)
        throw Error(Err::LengthMismatch, "carved_cols exceeds orig_cols");
    if (h.carved_rows != h.orig_rows)
        throw Error(Err::LengthMismatch, "carved_rows must equal orig_rows");
}

// Dictionary size visible to the decoder after the i-th code arrives.
uint32_t dict_after(uint64_t i) {
    return uint32_t(std::min<uint64_t>(kLzwAlphabet + i, kLzwMaxEntries));
}

} // namespace

PackedBits pack_codes(const CodeStream& cs) {
    BitWriter w;
    int width = 9;
    for (size_t i = 0; i < cs.codes.size(); ++i) {
        if (cs.codes[i] >= (1u << width))
            throw Error(Err::CodeTooWide, "code " + std::to_string(cs.codes[i]) + " at width " +
                                              std::to_string(width));
        w.write(cs.codes[i], width);
        if (width < 16 && dict_after(i) == (1u << width)) ++width;
    }
    PackedBits out;
    out.bit_count = w.bit_count();
    out.bytes = w.take();
    return out;
}

CodeStream unpack_codes(std::span<const uint8_t> bytes, uint64_t bit_count) {
    BitReader r(bytes, bit_count);
    r.check_padding();
    CodeStream cs;
    int width = 9;
    while (r.remaining() > 0) {
        cs.codes.push_back(uint16_t(r.read(width)));
        if (width < 16 && dict_after(cs.codes.size() - 1) == (1u << width)) ++width;
    }
    return cs;
}

std::vector<uint8_t> write_container(const ContainerHeader& h, std::span<const uint8_t> payload) {
    validate(h);
    if (payload.size() != (h.payload_bit_length + 7) / 8)
        throw Error(Err::LengthMismatch, "payload is " + std::to_string(payload.size()) +
                                             " bytes for " + std::to_string(h.payload_bit_length) +
                                             " bits");
    std::vector<uint8_t> out;
    out.reserve(kContainerHeaderSize + payload.size());
    out.insert(out.end(), {'P', 'L', 'F', 'C'});
    out.push_back(kContainerVersion);
    out.push_back(uint8_t(h.codec));
    put32(out, h.carved_rows);
    put32(out, h.carved_cols);
    put32(out, h.orig_rows);
    put32(out, h.orig_cols);
    put64(out, h.payload_bit_length);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

ContainerHeader parse_header(std::span<const uint8_t> bytes) {
    if (bytes.size() < kContainerHeaderSize)
        throw Error(Err::LengthMismatch, "file is " + std::to_string(bytes.size()) +
                                             " bytes, header needs " +
                                             std::to_string(kContainerHeaderSize));
    if (!(bytes[0] == 'P' && bytes[1] == 'L' && bytes[2] == 'F' && bytes[3] == 'C'))
        throw Error(Err::BadMagic, "bad magic");
    if (bytes[4] != kContainerVersion)
        throw Error(Err::UnsupportedVersion, "version " + std::to_string(bytes[4]));
    ContainerHeader h;
    h.codec = codec_from_id(bytes[5]);
    h.carved_rows = get32(bytes, 6);
    h.carved_cols = get32(bytes, 10);
    h.orig_rows = get32(bytes, 14);
    h.orig_cols = get32(bytes, 18);
    h.payload_bit_length = get64(bytes, 22);
    validate(h);
    return h;
}

std::pair<ContainerHeader, std::vector<uint8_t>> read_container(std::span<const uint8_t> bytes) {
    ContainerHeader h = parse_header(bytes);
    const size_t expect = size_t((h.payload_bit_length + 7) / 8);
    if (bytes.size() - kContainerHeaderSize != expect)
        throw Error(Err::LengthMismatch, "payload is " +
                                             std::to_string(bytes.size() - kContainerHeaderSize) +
                                             " bytes, header promises " + std::to_string(expect));
    return {h, {bytes.begin() + kContainerHeaderSize, bytes.end()}};
}

} // namespace plfc
