#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace votepos {

enum class ErrorCode {
  ParseError,
  NotNonincreasing,
  ConstantRule,
  IndexOutOfRange,
  CountMismatch,
  PositionOutOfRange,
  InvalidTarget,
  CompositionMismatch,
  OddM,
  FormMismatch,
  UnsupportedM,
  DimensionMismatch,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above, so
/// callers (the CLI in particular) can map input errors to exit codes
/// without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace votepos
