#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "plfc/bitio.hpp"
#include "plfc/container.hpp"
#include "plfc/error.hpp"

using namespace plfc;

// Codes a well-formed LZW decoder could actually see: the first is a raw
// byte, each later one is at most the next unassigned entry.
static CodeStream synth_stream(std::mt19937& rng, size_t n) {
    CodeStream cs;
    for (size_t i = 0; i < n; ++i) {
        uint32_t bound = i == 0 ? 256 : std::min<uint32_t>(256 + uint32_t(i), 65536);
        cs.codes.push_back(uint16_t(rng() % bound));
    }
    return cs;
}

TEST_CASE("bit writer and reader round trip every width") {
    BitWriter w;
    for (int width = 1; width <= 16; ++width)
        for (uint64_t v = 0; v < (1ull << width); v += width <= 12 ? 1 : 97)
            w.write(v, width);
    uint64_t bits = w.bit_count();
    std::vector<uint8_t> buf = w.take();
    BitReader r(buf, bits);
    for (int width = 1; width <= 16; ++width)
        for (uint64_t v = 0; v < (1ull << width); v += width <= 12 ? 1 : 97)
            CHECK(r.read(width) == v);
    CHECK(r.remaining() == 0);
}

TEST_CASE("bit packing is MSB first with zero padding") {
    BitWriter w;
    w.write(66, 9);
    w.write(65, 9);
    std::vector<uint8_t> buf = w.bytes();
    REQUIRE(buf.size() == 3);
    CHECK(buf[0] == 0x21);
    CHECK(buf[1] == 0x10);
    CHECK(buf[2] == 0x40);
}

TEST_CASE("pack_codes golden bytes") {
    CodeStream cs;
    cs.codes = {66, 65};
    PackedBits p = pack_codes(cs);
    CHECK(p.bit_count == 18);
    CHECK(p.bytes == std::vector<uint8_t>{0x21, 0x10, 0x40});
    CHECK(unpack_codes(p.bytes, p.bit_count) == cs);
}

TEST_CASE("empty code stream packs to nothing") {
    PackedBits p = pack_codes(CodeStream{});
    CHECK(p.bit_count == 0);
    CHECK(p.bytes.empty());
    CHECK(unpack_codes(p.bytes, 0).codes.empty());
}

TEST_CASE("pack rejects codes too wide for their position") {
    CodeStream cs;
    cs.codes = {600}; // width is still 9 here
    CHECK(error_code([&] { pack_codes(cs); }) == Err::CodeTooWide);
}

TEST_CASE("width grows at dictionary powers of two") {
    // 256 codes in, the dictionary hits 512 and width becomes 10; the bit
    // count pins the schedule exactly.
    std::mt19937 rng(61);
    CodeStream cs = synth_stream(rng, 300);
    PackedBits p = pack_codes(cs);
    CHECK(p.bit_count == 257 * 9 + 43 * 10);
    CHECK(unpack_codes(p.bytes, p.bit_count) == cs);

    CodeStream big = synth_stream(rng, 900);
    PackedBits pb = pack_codes(big);
    CHECK(pb.bit_count == 257 * 9 + 512 * 10 + 131 * 11);
    CHECK(unpack_codes(pb.bytes, pb.bit_count) == big);
}

TEST_CASE("pack and unpack across many synthesized streams") {
    std::mt19937 rng(62);
    for (int i = 0; i < 50; ++i) {
        CodeStream cs = synth_stream(rng, rng() % 1200);
        PackedBits p = pack_codes(cs);
        CHECK(p.bytes.size() == (p.bit_count + 7) / 8);
        CHECK(unpack_codes(p.bytes, p.bit_count) == cs);
    }
}

TEST_CASE("unpack rejects bad padding and truncation") {
    CodeStream cs;
    cs.codes = {66, 65};
    PackedBits p = pack_codes(cs);

    std::vector<uint8_t> dirty = p.bytes;
    dirty[2] |= 0x01; // pad bit
    CHECK(error_code([&] { unpack_codes(dirty, p.bit_count); }) == Err::TrailingGarbage);

    CHECK(error_code([&] { unpack_codes(p.bytes, p.bit_count + 32); }) == Err::TruncatedPayload);
    CHECK(error_code([&] { unpack_codes(p.bytes, p.bit_count + 4); }) == Err::TruncatedPayload);
}

TEST_CASE("header layout is exactly 30 bytes") {
    // Field sum: 4 magic + 1 version + 1 codec + 4*4 dims + 8 bit length.
    CHECK(kContainerHeaderSize == 4 + 1 + 1 + 4 + 4 + 4 + 4 + 8);
    ContainerHeader h;
    h.codec = CodecId::Store;
    h.carved_rows = h.orig_rows = 1;
    h.carved_cols = h.orig_cols = 1;
    h.payload_bit_length = 0;
    std::vector<uint8_t> file = write_container(h, {});
    CHECK(file.size() == 30);
    auto [h2, payload] = read_container(file);
    CHECK(h2 == h);
    CHECK(payload.empty());
}

TEST_CASE("container round trips random headers and payloads") {
    std::mt19937 rng(63);
    for (int i = 0; i < 100; ++i) {
        ContainerHeader h;
        h.codec = CodecId(rng() % 4);
        h.orig_rows = 1 + rng() % 500;
        h.orig_cols = 1 + rng() % 500;
        h.carved_rows = h.orig_rows;
        h.carved_cols = 1 + rng() % h.orig_cols;
        std::vector<uint8_t> payload(rng() % 200);
        for (auto& b : payload) b = uint8_t(rng());
        h.payload_bit_length = uint64_t(payload.size()) * 8;

        std::vector<uint8_t> file = write_container(h, payload);
        CHECK(file.size() == 30 + payload.size());
        auto [h2, p2] = read_container(file);
        CHECK(h2 == h);
        CHECK(p2 == payload);
    }
}

TEST_CASE("read_container rejections") {
    ContainerHeader h;
    h.codec = CodecId::Lzw;
    h.carved_rows = h.orig_rows = 2;
    h.carved_cols = 3;
    h.orig_cols = 4;
    std::vector<uint8_t> payload{0xAB, 0xCD};
    h.payload_bit_length = 16;
    std::vector<uint8_t> good = write_container(h, payload);

    auto code_for = [](std::vector<uint8_t> f) { return error_code([&] { read_container(f); }); };

    std::vector<uint8_t> wrong_magic = good;
    wrong_magic[0] = 'Q';
    CHECK(code_for(wrong_magic) == Err::BadMagic);

    std::vector<uint8_t> wrong_version = good;
    wrong_version[4] = 2;
    CHECK(code_for(wrong_version) == Err::UnsupportedVersion);

    std::vector<uint8_t> bad_codec = good;
    bad_codec[5] = 9;
    CHECK(code_for(bad_codec) == Err::BadCode);

    std::vector<uint8_t> short_file(good.begin(), good.begin() + 20);
    CHECK(code_for(short_file) == Err::LengthMismatch);

    std::vector<uint8_t> missing_payload = good;
    missing_payload.pop_back();
    CHECK(code_for(missing_payload) == Err::LengthMismatch);

    std::vector<uint8_t> extra_payload = good;
    extra_payload.push_back(0);
    CHECK(code_for(extra_payload) == Err::LengthMismatch);

    std::vector<uint8_t> zero_dims = good;
    zero_dims[6] = zero_dims[7] = zero_dims[8] = zero_dims[9] = 0; // carved_rows = 0
    CHECK(code_for(zero_dims) == Err::LengthMismatch);

    std::vector<uint8_t> rows_disagree = good;
    rows_disagree[17] = 3; // orig_rows = 3 != carved_rows
    CHECK(code_for(rows_disagree) == Err::LengthMismatch);

    std::vector<uint8_t> cols_too_wide = good;
    cols_too_wide[13] = 5; // carved_cols = 5 > orig_cols = 4
    CHECK(code_for(cols_too_wide) == Err::LengthMismatch);
}

TEST_CASE("write_container validates the header") {
    ContainerHeader h;
    h.carved_rows = h.orig_rows = 1;
    h.carved_cols = h.orig_cols = 1;
    h.payload_bit_length = 9; // needs 2 bytes
    CHECK(error_code([&] { write_container(h, std::vector<uint8_t>{1}); }) == Err::LengthMismatch);
    h.payload_bit_length = 0;
    h.carved_cols = 2;
    CHECK(error_code([&] { write_container(h, {}); }) == Err::LengthMismatch);
}

TEST_CASE("parse_header reads a header-only prefix") {
    ContainerHeader h;
    h.codec = CodecId::Huffman;
    h.carved_rows = h.orig_rows = 7;
    h.carved_cols = 5;
    h.orig_cols = 9;
    std::vector<uint8_t> payload(4);
    h.payload_bit_length = 32;
    std::vector<uint8_t> file = write_container(h, payload);
    std::vector<uint8_t> prefix(file.begin(), file.begin() + 30);
    CHECK(parse_header(prefix) == h);
}
