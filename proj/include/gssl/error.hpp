#pragma once

#include <stdexcept>
#include <string>

namespace gssl {

enum class ErrorCode {
  EmptyInput,
  KTooLarge,
  DegenerateScale,
  DimensionMismatch,
  InvalidArgument,
  InvalidGraph,
  InvalidP,
  InvalidTau,
  NonpositiveWeightSum,
  IndexOutOfRange,
  DisconnectedGraph,
  ZeroDegreeNode,
  NoLabels,
  EmptyClass,
  SizeGuard,
  UnlabeledComponent,
  InsufficientClassMembers,
  Format,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (and tests) can branch on the cause rather than on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace gssl
