#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rtsd {

enum class ErrorCode {
    InvalidArgument,
    ChannelNotFound,
    EmptyStream,
    MissingClass,
    MalformedHeader,
    ChannelCountMismatch,
    TruncatedPayload,
    MalformedData,
    LabelParse,
    IncompatibleFeature,
    DegenerateDataset,
    Io,
    Validation,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    /// Message without the "kind: " prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) {
        fail(code, message);
    }
}

// Literal messages skip the std::string construction on the passing path.
inline void require(bool condition, ErrorCode code, const char* message) {
    if (!condition) {
        fail(code, message);
    }
}

} // namespace rtsd
