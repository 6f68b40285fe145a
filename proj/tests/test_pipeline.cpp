#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "plfc/error.hpp"
#include "plfc/pipeline.hpp"
#include "plfc/seam.hpp"

using namespace plfc;

static GrayImage random_image(std::mt19937& rng, int max_side) {
    std::uniform_int_distribution<int> side(1, max_side);
    std::uniform_int_distribution<int> px(0, 255);
    GrayImage img;
    img.rows = side(rng);
    img.cols = side(rng);
    img.pixels.resize(img.pixel_count());
    for (auto& p : img.pixels) p = uint8_t(px(rng));
    return img;
}

static CompressionSpec spec_k(int k, CodecId codec) {
    CompressionSpec s;
    s.seams = k;
    s.codec = codec;
    return s;
}

TEST_CASE("resolve_seams") {
    CompressionSpec def;
    CHECK(def.codec == CodecId::Lzw);
    CHECK(resolve_seams(def, 10) == 2); // default 20% of width
    CHECK(resolve_seams(def, 4) == 0);

    CompressionSpec frac;
    frac.seam_frac = 0.9999;
    CHECK(resolve_seams(frac, 4) == 3);

    frac.seam_frac = 1.0;
    CHECK(error_code([&] { resolve_seams(frac, 4); }) == Err::TooManySeams);
    frac.seam_frac = -0.1;
    CHECK(error_code([&] { resolve_seams(frac, 4); }) == Err::TooManySeams);

    CHECK(resolve_seams(spec_k(0, CodecId::Store), 1) == 0);
    CHECK(error_code([&] { resolve_seams(spec_k(4, CodecId::Store), 4); }) == Err::TooManySeams);
}

TEST_CASE("store with zero seams is a transparent wrapper") {
    GrayImage img = parse_csv("1,2,3\n4,5,6\n");
    std::vector<uint8_t> file = compress(img, spec_k(0, CodecId::Store));
    CHECK(file.size() == 30 + img.pixel_count());
    auto [h, payload] = read_container(file);
    CHECK(payload == flatten(img));
    CHECK(decompress(file) == to_csv(img));
}

TEST_CASE("header records both dimension pairs") {
    GrayImage img;
    img.rows = 4;
    img.cols = 6;
    img.pixels.assign(24, 100);
    std::vector<uint8_t> file = compress(img, spec_k(2, CodecId::Lzw));
    ContainerHeader h = parse_header(file);
    CHECK(h.carved_rows == 4);
    CHECK(h.carved_cols == 4);
    CHECK(h.orig_rows == 4);
    CHECK(h.orig_cols == 6);
    CHECK(h.codec == CodecId::Lzw);
}

TEST_CASE("golden container: 1x2 constant image, lzw, zero seams") {
    GrayImage img;
    img.rows = 1;
    img.cols = 2;
    img.pixels = {7, 7};
    std::vector<uint8_t> file = compress(img, spec_k(0, CodecId::Lzw));
    const std::vector<uint8_t> want = {
        'P', 'L', 'F', 'C', 1, 1,         // magic, version, codec
        0, 0, 0, 1, 0, 0, 0, 2,           // carved 1x2
        0, 0, 0, 1, 0, 0, 0, 2,           // original 1x2
        0, 0, 0, 0, 0, 0, 0, 18,          // 18 payload bits
        0x03, 0x81, 0xC0,                 // codes 7, 7 at width 9
    };
    CHECK(file == want);
    CHECK(decompress(file) == "7,7\n");
}

TEST_CASE("pipeline equals carve-then-serialize, all codecs") {
    std::mt19937 rng(71);
    const CodecId codecs[] = {CodecId::Store, CodecId::Lzw, CodecId::Huffman, CodecId::Lz77};
    for (int i = 0; i < 40; ++i) {
        GrayImage img = random_image(rng, 24);
        int ks[] = {0, 1, img.cols / 4};
        for (int k : ks) {
            if (k >= img.cols) continue;
            CodecId codec = codecs[i % 4];
            std::vector<uint8_t> file = compress(img, spec_k(k, codec));
            std::string want = to_csv(carve(img, k));
            CHECK(decompress(file) == want);
        }
    }
}

TEST_CASE("compress is a pure function") {
    std::mt19937 rng(72);
    GrayImage img = random_image(rng, 32);
    CompressionSpec spec; // defaults
    CHECK(compress(img, spec) == compress(img, spec));
}

TEST_CASE("carved pixel count strictly decreases with k") {
    std::mt19937 rng(73);
    GrayImage img = random_image(rng, 20);
    if (img.cols < 4) img.cols = 4, img.pixels.assign(size_t(img.rows) * 4, 50);
    size_t prev = SIZE_MAX;
    for (int k = 0; k < img.cols; ++k) {
        auto [h, carved] = decode_container_image(compress(img, spec_k(k, CodecId::Store)));
        CHECK(carved.pixel_count() < prev);
        prev = carved.pixel_count();
    }
}

TEST_CASE("huffman payload carries the 256-byte table up front") {
    GrayImage img = parse_csv("5,5,5,9\n5,9,5,5\n");
    std::vector<uint8_t> file = compress(img, spec_k(0, CodecId::Huffman));
    auto [h, payload] = read_container(file);
    REQUIRE(payload.size() >= 256);
    CHECK(payload[5] == 1); // symbol 5: length 1
    CHECK(payload[9] == 1); // symbol 9: length 1
    CHECK(h.payload_bit_length == 2048 + 8);
    CHECK(payload.size() == 256 + 1);
    CHECK(decompress(file) == to_csv(img));
}

TEST_CASE("decompress rejects payload that disagrees with the dims") {
    ContainerHeader h;
    h.codec = CodecId::Store;
    h.carved_rows = h.orig_rows = 2;
    h.carved_cols = h.orig_cols = 2;
    std::vector<uint8_t> payload{1, 2, 3}; // 3 bytes for a 2x2 image
    h.payload_bit_length = 24;
    std::vector<uint8_t> file = write_container(h, payload);
    CHECK(error_code([&] { decompress(file); }) == Err::DimensionMismatch);
}

TEST_CASE("byte-aligned codecs reject fractional bit lengths") {
    ContainerHeader h;
    h.codec = CodecId::Store;
    h.carved_rows = h.orig_rows = 1;
    h.carved_cols = h.orig_cols = 1;
    h.payload_bit_length = 7;
    std::vector<uint8_t> file = write_container(h, std::vector<uint8_t>{0});
    CHECK(error_code([&] { decompress(file); }) == Err::TruncatedPayload);
}

TEST_CASE("ratio arithmetic and formatting") {
    CHECK(compression_ratio(1000, 500) == doctest::Approx(2.0));
    CHECK(format_ratio(compression_ratio(1000, 500)) == "2.00:1");
    CHECK(format_ratio(compression_ratio(1000, 550)) == "1.82:1");
    CHECK(format_ratio(compression_ratio(900, 550)) == "1.64:1");
    CHECK(error_code([&] { compression_ratio(0, 5); }) == Err::ZeroSize);
    CHECK(error_code([&] { compression_ratio(5, 0); }) == Err::ZeroSize);
}

TEST_CASE("compression meter peak covers the input image") {
    std::mt19937 rng(74);
    for (int i = 0; i < 10; ++i) {
        GrayImage img = random_image(rng, 40);
        BufferMeter m;
        compress(img, CompressionSpec{}, &m);
        CHECK(m.peak >= img.pixel_count());
    }
}

TEST_CASE("meters are deterministic") {
    std::mt19937 rng(75);
    GrayImage img = random_image(rng, 30);
    CompressionSpec spec = spec_k(img.cols / 3, CodecId::Lzw);
    BufferMeter a, b;
    std::vector<uint8_t> file = compress(img, spec, &a);
    compress(img, spec, &b);
    CHECK(a.peak == b.peak);

    BufferMeter da, db;
    decompress(file, &da);
    decompress(file, &db);
    CHECK(da.peak == db.peak);
}
