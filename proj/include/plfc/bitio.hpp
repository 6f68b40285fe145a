#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plfc/error.hpp"

namespace plfc {

// MSB-first bit packing: the first bit written lands in the high bit of the
// first byte. The final partial byte is zero padded.
class BitWriter {
public:
    void write(uint64_t value, int width) {
        for (int i = width - 1; i >= 0; --i) {
            if (bit_ == 0) buf_.push_back(0);
            if ((value >> i) & 1) buf_.back() |= uint8_t(0x80u >> bit_);
            bit_ = (bit_ + 1) & 7;
        }
        bits_ += width;
    }

    uint64_t bit_count() const { return bits_; }
    std::vector<uint8_t> take() { return std::move(buf_); }
    const std::vector<uint8_t>& bytes() const { return buf_; }

private:
    std::vector<uint8_t> buf_;
    uint64_t bits_ = 0;
    int bit_ = 0;
};

class BitReader {
public:
    BitReader(std::span<const uint8_t> data, uint64_t bit_count)
        : data_(data), bit_count_(bit_count) {
        if (bit_count_ > data_.size() * 8ull)
            throw Error(Err::TruncatedPayload, std::to_string(bit_count_) + " bits promised, " +
                                                   std::to_string(data_.size()) + " bytes present");
    }

    uint64_t remaining() const { return bit_count_ - pos_; }

    uint64_t read(int width) {
        if (uint64_t(width) > remaining())
            throw Error(Err::TruncatedPayload, "read past the declared bit length");
        uint64_t v = 0;
        for (int i = 0; i < width; ++i) {
            uint64_t byte = pos_ >> 3;
            int bit = int(pos_ & 7);
            v = (v << 1) | ((data_[byte] >> (7 - bit)) & 1);
            ++pos_;
        }
        return v;
    }

    // Padding bits past the declared length must be zero.
    void check_padding() const {
        for (uint64_t p = bit_count_; p < data_.size() * 8ull; ++p)
            if ((data_[p >> 3] >> (7 - (p & 7))) & 1)
                throw Error(Err::TrailingGarbage, "nonzero padding bit at offset " + std::to_string(p));
    }

private:
    std::span<const uint8_t> data_;
    uint64_t bit_count_;
    uint64_t pos_ = 0;
};

} // namespace plfc
