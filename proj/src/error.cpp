#include "gssl/error.hpp"

namespace gssl {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::DegenerateScale: return "DegenerateScale";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::InvalidTau: return "InvalidTau";
    case ErrorCode::NonpositiveWeightSum: return "NonpositiveWeightSum";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::ZeroDegreeNode: return "ZeroDegreeNode";
    case ErrorCode::NoLabels: return "NoLabels";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::UnlabeledComponent: return "UnlabeledComponent";
    case ErrorCode::InsufficientClassMembers: return "InsufficientClassMembers";
    case ErrorCode::Format: return "Format";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace gssl
