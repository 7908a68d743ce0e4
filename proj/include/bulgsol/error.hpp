#pragma once

#include <stdexcept>
#include <string>

namespace bulgsol {

enum class ErrorCode {
    NotSorted,
    NonPositivePart,
    NegativeX,
    EmptyPartition,
    Overflow,
    QOutOfRange,
    SigmaExceedsPile,
    PileTooLarge,
    MissingLevelOne,
    Unsorted,
    NotWellBehaved,
    NotConvex,
    SigmaBarDecreasing,
    NotStableReference,
    TooLarge,
    NonPositiveZ,
    NonPositiveC,
    NoConvergence,
    NotConvexShape,
    DerivativeNotMultipleOfC,
    AreaExceedsOne,
    UnknownSuite,
    BadInput,
};

const char* error_code_name(ErrorCode code);

/// Domain error carrying a stable code name (printed by the CLI on stderr).
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace bulgsol
