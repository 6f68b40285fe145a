#pragma once

#include <stdexcept>
#include <string>

namespace plfc {

// Every recoverable failure in the library carries one of these codes so
// callers can branch on the kind without parsing message text.
enum class Err {
    // csv / image
    EmptyInput,
    RaggedRows,
    BadPixel,
    DimensionMismatch,
    // seam carving
    TooNarrow,
    SeamOutOfRange,
    SeamNotConnected,
    TooManySeams,
    // codecs
    BadCode,
    BadLengthTable,
    TruncatedBits,
    BadOffset,
    CodeTooWide,
    // container
    TruncatedPayload,
    TrailingGarbage,
    BadMagic,
    UnsupportedVersion,
    LengthMismatch,
    // metrics / harness
    ZeroSize,
    EmptyCorpus,
    BadReport,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::EmptyInput: return "EmptyInput";
        case Err::RaggedRows: return "RaggedRows";
        case Err::BadPixel: return "BadPixel";
        case Err::DimensionMismatch: return "DimensionMismatch";
        case Err::TooNarrow: return "TooNarrow";
        case Err::SeamOutOfRange: return "SeamOutOfRange";
        case Err::SeamNotConnected: return "SeamNotConnected";
        case Err::TooManySeams: return "TooManySeams";
        case Err::BadCode: return "BadCode";
        case Err::BadLengthTable: return "BadLengthTable";
        case Err::TruncatedBits: return "TruncatedBits";
        case Err::BadOffset: return "BadOffset";
        case Err::CodeTooWide: return "CodeTooWide";
        case Err::TruncatedPayload: return "TruncatedPayload";
        case Err::TrailingGarbage: return "TrailingGarbage";
        case Err::BadMagic: return "BadMagic";
        case Err::UnsupportedVersion: return "UnsupportedVersion";
        case Err::LengthMismatch: return "LengthMismatch";
        case Err::ZeroSize: return "ZeroSize";
        case Err::EmptyCorpus: return "EmptyCorpus";
        case Err::BadReport: return "BadReport";
    }
    return "Unknown";
}

} // namespace plfc
