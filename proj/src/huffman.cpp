#include "plfc/huffman.hpp"

#include <algorithm>
#include <queue>

#include "plfc/bitio.hpp"
#include "plfc/error.hpp"

namespace plfc {
namespace {

constexpr int kMaxCodeLen = 63;

struct Node {
    uint64_t freq;
    uint32_t order; // leaves: symbol value; internal: 256 + creation count
    int left = -1;
    int right = -1;
};

struct HeapLess {
    const std::vector<Node>* nodes;
    bool operator()(int a, int b) const {
        const Node& x = (*nodes)[a];
        const Node& y = (*nodes)[b];
        if (x.freq != y.freq) return x.freq > y.freq;
        return x.order > y.order;
    }
};

std::array<uint8_t, 256> code_lengths(const std::array<uint64_t, 256>& freq) {
    std::array<uint8_t, 256> lengths{};
    std::vector<Node> nodes;
    std::vector<int> heap;
    for (int s = 0; s < 256; ++s) {
        if (freq[s] == 0) continue;
        heap.push_back(int(nodes.size()));
        nodes.push_back({freq[s], uint32_t(s)});
    }
    if (nodes.empty()) return lengths;
    if (nodes.size() == 1) {
        lengths[nodes[0].order] = 1;
        return lengths;
    }

    std::priority_queue<int, std::vector<int>, HeapLess> pq(HeapLess{&nodes},
                                                            std::move(heap));
    uint32_t created = 0;
    while (pq.size() > 1) {
        int a = pq.top();
        pq.pop();
        int b = pq.top();
        pq.pop();
        nodes.push_back({nodes[a].freq + nodes[b].freq, 256 + created++, a, b});
        pq.push(int(nodes.size()) - 1);
    }

    // Depth-first walk assigns each leaf its depth as the code length.
    std::vector<std::pair<int, int>> stack{{pq.top(), 0}};
    while (!stack.empty()) {
        auto [n, depth] = stack.back();
        stack.pop_back();
        if (nodes[n].left < 0) {
            if (depth > kMaxCodeLen)
                throw Error(Err::BadLengthTable, "code length exceeds " + std::to_string(kMaxCodeLen));
            lengths[nodes[n].order] = uint8_t(depth);
            continue;
        }
        stack.push_back({nodes[n].left, depth + 1});
        stack.push_back({nodes[n].right, depth + 1});
    }
    return lengths;
}

// Canonical assignment: codes increase with (length, symbol) order.
void canonical_codes(const std::array<uint8_t, 256>& lengths,
                     std::array<uint64_t, 256>& codes) {
    std::vector<int> syms;
    for (int s = 0; s < 256; ++s)
        if (lengths[s]) syms.push_back(s);
    std::sort(syms.begin(), syms.end(), [&](int a, int b) {
        if (lengths[a] != lengths[b]) return lengths[a] < lengths[b];
        return a < b;
    });
    uint64_t code = 0;
    int prev = syms.empty() ? 0 : lengths[syms[0]];
    for (int s : syms) {
        code <<= (lengths[s] - prev);
        prev = lengths[s];
        codes[s] = code++;
    }
}

} // namespace

HuffmanEncoded huffman_encode(std::span<const uint8_t> data) {
    HuffmanEncoded out;
    if (data.empty()) return out;

    std::array<uint64_t, 256> freq{};
    for (uint8_t b : data) ++freq[b];
    out.lengths = code_lengths(freq);

    std::array<uint64_t, 256> codes{};
    canonical_codes(out.lengths, codes);

    BitWriter w;
    for (uint8_t b : data) w.write(codes[b], out.lengths[b]);
    out.bit_count = w.bit_count();
    out.bits = w.take();
    return out;
}

std::vector<uint8_t> huffman_decode(const std::array<uint8_t, 256>& lengths,
                                    std::span<const uint8_t> bits, uint64_t bit_count) {
    int present = 0;
    int single = -1;
    for (int s = 0; s < 256; ++s) {
        if (lengths[s] > kMaxCodeLen)
            throw Error(Err::BadLengthTable, "length " + std::to_string(lengths[s]) + " for symbol " +
                                                 std::to_string(s));
        if (lengths[s]) {
            ++present;
            single = s;
        }
    }
    if (present == 0) {
        if (bit_count != 0) throw Error(Err::TruncatedBits, "bits present but length table is empty");
        return {};
    }
    if (present == 1) {
        if (lengths[single] != 1)
            throw Error(Err::BadLengthTable, "lone symbol must have length 1");
    } else {
        // A complete prefix code satisfies Kraft's equality exactly. Bail as
        // soon as the sum passes the target so it cannot wrap around.
        uint64_t kraft = 0;
        for (int s = 0; s < 256 && kraft <= 1ull << kMaxCodeLen; ++s)
            if (lengths[s]) kraft += 1ull << (kMaxCodeLen - lengths[s]);
        if (kraft != 1ull << kMaxCodeLen)
            throw Error(Err::BadLengthTable, "length table violates Kraft equality");
    }

    // first_code/offset per length, symbols ordered by (length, symbol).
    std::array<uint32_t, kMaxCodeLen + 1> count{};
    for (int s = 0; s < 256; ++s)
        if (lengths[s]) ++count[lengths[s]];
    std::array<uint64_t, kMaxCodeLen + 1> first{};
    std::array<uint32_t, kMaxCodeLen + 1> offset{};
    uint64_t code = 0;
    uint32_t off = 0;
    for (int l = 1; l <= kMaxCodeLen; ++l) {
        first[l] = code;
        offset[l] = off;
        code = (code + count[l]) << 1;
        off += count[l];
    }
    std::vector<uint8_t> sym_at(off);
    {
        std::array<uint32_t, kMaxCodeLen + 1> next = offset;
        for (int s = 0; s < 256; ++s)
            if (lengths[s]) sym_at[next[lengths[s]]++] = uint8_t(s);
    }

    BitReader r(bits, bit_count);
    std::vector<uint8_t> out;
    uint64_t acc = 0;
    int len = 0;
    while (r.remaining() > 0) {
        acc = (acc << 1) | r.read(1);
        ++len;
        if (len > kMaxCodeLen) throw Error(Err::TruncatedBits, "undecodable bit pattern");
        if (count[len] && acc - first[len] < count[len]) {
            out.push_back(sym_at[offset[len] + uint32_t(acc - first[len])]);
            acc = 0;
            len = 0;
        }
    }
    if (len != 0) throw Error(Err::TruncatedBits, "bit stream ends mid-code");
    return out;
}

} // namespace plfc
