#include "plfc/lz77.hpp"

#include <array>

#include "plfc/error.hpp"

namespace plfc {

std::vector<Lz77Token> lz77_encode(std::span<const uint8_t> data, size_t window,
                                   size_t lookahead) {
    if (window < 1 || lookahead < 1) throw Error(Err::BadOffset, "window and lookahead must be >= 1");
    if (window > 0xFFFF || lookahead > 0xFF)
        throw Error(Err::BadOffset, "window caps at 65535 and lookahead at 255");
    std::vector<Lz77Token> out;
    const size_t n = data.size();

    // Positions of each byte value, ascending; scanned newest-first so equal
    // length matches keep the smallest offset.
    std::array<std::vector<uint32_t>, 256> index;
    size_t p = 0;
    while (p < n) {
        const size_t max_len = std::min(lookahead, n - p);
        const size_t low = p > window ? p - window : 0;
        size_t best_len = 0;
        size_t best_off = 0;

        const auto& cand = index[data[p]];
        for (auto it = cand.rbegin(); it != cand.rend(); ++it) {
            const size_t c = *it;
            if (c < low) break;
            size_t l = 1;
            while (l < max_len && data[c + l] == data[p + l]) ++l;
            if (l > best_len) {
                best_len = l;
                best_off = p - c;
                if (l == max_len) break;
            }
        }

        size_t match = best_len;
        if (p + match == n && match > 0) --match; // keep a literal for the last byte
        Lz77Token tok;
        if (match > 0) {
            tok.offset = uint16_t(best_off);
            tok.length = uint8_t(match);
        }
        tok.next = data[p + match];
        out.push_back(tok);

        const size_t consumed = match + 1;
        for (size_t i = 0; i < consumed; ++i) index[data[p + i]].push_back(uint32_t(p + i));
        p += consumed;
    }
    return out;
}

std::vector<uint8_t> lz77_decode(std::span<const Lz77Token> tokens) {
    std::vector<uint8_t> out;
    for (const auto& t : tokens) {
        if ((t.offset == 0) != (t.length == 0))
            throw Error(Err::BadOffset, "offset and length must be zero together");
        if (t.offset > out.size())
            throw Error(Err::BadOffset, "offset " + std::to_string(t.offset) + " reaches before start");
        size_t from = out.size() - t.offset;
        for (size_t i = 0; i < t.length; ++i) out.push_back(out[from + i]);
        out.push_back(t.next);
    }
    return out;
}

std::vector<uint8_t> lz77_pack(std::span<const Lz77Token> tokens) {
    std::vector<uint8_t> out;
    out.reserve(tokens.size() * 4);
    for (const auto& t : tokens) {
        out.push_back(uint8_t(t.offset >> 8));
        out.push_back(uint8_t(t.offset & 0xFF));
        out.push_back(t.length);
        out.push_back(t.next);
    }
    return out;
}

std::vector<Lz77Token> lz77_unpack(std::span<const uint8_t> bytes) {
    if (bytes.size() % 4 != 0)
        throw Error(Err::TruncatedPayload, "token stream is " + std::to_string(bytes.size()) +
                                               " bytes, not a multiple of 4");
    std::vector<Lz77Token> out;
    out.reserve(bytes.size() / 4);
    for (size_t i = 0; i < bytes.size(); i += 4) {
        Lz77Token t;
        t.offset = uint16_t((uint16_t(bytes[i]) << 8) | bytes[i + 1]);
        t.length = bytes[i + 2];
        t.next = bytes[i + 3];
        out.push_back(t);
    }
    return out;
}

} // namespace plfc
