#include "rtsd/error.hpp"

namespace rtsd {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::ChannelNotFound: return "named-channel-not-found";
    case ErrorCode::EmptyStream: return "empty-stream";
    case ErrorCode::MissingClass: return "missing-class";
    case ErrorCode::MalformedHeader: return "malformed-header";
    case ErrorCode::ChannelCountMismatch: return "channel-count-mismatch";
    case ErrorCode::TruncatedPayload: return "truncated-payload";
    case ErrorCode::MalformedData: return "malformed-data";
    case ErrorCode::LabelParse: return "label-parse";
    case ErrorCode::IncompatibleFeature: return "incompatible-feature";
    case ErrorCode::DegenerateDataset: return "degenerate-dataset";
    case ErrorCode::Io: return "io";
    case ErrorCode::Validation: return "validation";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace rtsd
