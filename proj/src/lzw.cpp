#include "plfc/lzw.hpp"

#include <algorithm>
#include <unordered_map>

namespace plfc {

namespace {

// Dictionary keys pack (prefix code, next byte) into one integer; strings
// are never materialized while encoding.
constexpr uint32_t key_of(uint32_t prefix, uint8_t next) { return (prefix << 8) | next; }

struct Encoder {
    std::unordered_map<uint32_t, uint32_t> table;
    uint32_t next_code = kLzwAlphabet;

    Encoder() { table.reserve(4096); }

    // Returns the entry index for prefix+b, or 0xFFFFFFFF when absent.
    uint32_t find(uint32_t prefix, uint8_t b) const {
        auto it = table.find(key_of(prefix, b));
        return it == table.end() ? 0xFFFFFFFFu : it->second;
    }

    bool insert(uint32_t prefix, uint8_t b) {
        if (next_code >= kLzwMaxEntries) return false; // frozen
        table.emplace(key_of(prefix, b), next_code++);
        return true;
    }
};

} // namespace

CodeStream lzw_encode(std::span<const uint8_t> data) {
    CodeStream cs;
    if (data.empty()) return cs;
    cs.codes.reserve(data.size() / 2 + 8);

    Encoder enc;
    uint32_t current = data[0];
    for (size_t i = 1; i < data.size(); ++i) {
        uint8_t b = data[i];
        uint32_t extended = enc.find(current, b);
        if (extended != 0xFFFFFFFFu) {
            current = extended;
            continue;
        }
        cs.codes.push_back(uint16_t(current));
        enc.insert(current, b);
        current = b;
    }
    cs.codes.push_back(uint16_t(current));
    return cs;
}

CodeStream lzw_encode_traced(std::span<const uint8_t> data, std::vector<LzwEmit>& trace,
                             uint32_t& dict_size) {
    trace.clear();
    CodeStream cs;
    if (data.empty()) {
        dict_size = kLzwAlphabet;
        return cs;
    }

    Encoder enc;
    // Parent chain per entry so inserted strings can be spelled out.
    std::vector<uint32_t> parent;
    std::vector<uint8_t> last;

    auto spell = [&](uint32_t code) {
        std::string s;
        while (code >= kLzwAlphabet) {
            uint32_t i = code - kLzwAlphabet;
            s.push_back(char(last[i]));
            code = parent[i];
        }
        s.push_back(char(code));
        std::reverse(s.begin(), s.end());
        return s;
    };

    auto emit = [&](uint32_t code, uint8_t b, bool try_insert) {
        cs.codes.push_back(uint16_t(code));
        LzwEmit e;
        e.code = uint16_t(code);
        if (try_insert && enc.insert(code, b)) {
            parent.push_back(code);
            last.push_back(b);
            e.inserted = true;
            e.entry_index = enc.next_code - 1;
            e.entry = spell(e.entry_index);
        }
        trace.push_back(std::move(e));
    };

    uint32_t current = data[0];
    for (size_t i = 1; i < data.size(); ++i) {
        uint8_t b = data[i];
        uint32_t extended = enc.find(current, b);
        if (extended != 0xFFFFFFFFu) {
            current = extended;
            continue;
        }
        emit(current, b, true);
        current = b;
    }
    emit(current, 0, false);
    dict_size = enc.next_code;
    return cs;
}

std::vector<uint8_t> lzw_decode(const CodeStream& cs) {
    std::vector<uint8_t> out;
    if (cs.codes.empty()) return out;
    out.reserve(cs.codes.size() * 2);

    // Entry i (offset past the 256 literals) is parent[i] extended by
    // last[i]; first[i] and len[i] let the KwKwK case and back-to-front
    // materialization run without walking chains twice.
    std::vector<uint32_t> parent;
    std::vector<uint8_t> last;
    std::vector<uint8_t> first;
    std::vector<uint32_t> len;
    uint32_t next_code = kLzwAlphabet;

    auto first_byte = [&](uint32_t code) {
        return code < kLzwAlphabet ? uint8_t(code) : first[code - kLzwAlphabet];
    };
    auto length_of = [&](uint32_t code) {
        return code < kLzwAlphabet ? 1u : len[code - kLzwAlphabet];
    };
    auto append_string = [&](uint32_t code) {
        uint32_t n = length_of(code);
        out.resize(out.size() + n);
        uint8_t* dst = out.data() + out.size();
        while (code >= kLzwAlphabet) {
            uint32_t i = code - kLzwAlphabet;
            *--dst = last[i];
            code = parent[i];
        }
        *--dst = uint8_t(code);
    };

    uint32_t c0 = cs.codes[0];
    if (c0 >= kLzwAlphabet)
        throw Error(Err::BadCode, "first code " + std::to_string(c0) + " is not a literal");
    out.push_back(uint8_t(c0));
    uint32_t prev = c0;

    for (size_t i = 1; i < cs.codes.size(); ++i) {
        uint32_t c = cs.codes[i];
        if (c > next_code)
            throw Error(Err::BadCode, "code " + std::to_string(c) + " exceeds next unassigned index " +
                                          std::to_string(next_code));
        if (c == next_code && next_code >= kLzwMaxEntries)
            throw Error(Err::BadCode, "code " + std::to_string(c) + " beyond the frozen dictionary");
        if (next_code < kLzwMaxEntries) {
            uint8_t b = c == next_code ? first_byte(prev) : first_byte(c);
            parent.push_back(prev);
            last.push_back(b);
            first.push_back(first_byte(prev));
            len.push_back(length_of(prev) + 1);
            ++next_code;
        }
        append_string(c);
        prev = c;
    }
    return out;
}

} // namespace plfc
