#pragma once

#include <stdexcept>
#include <string>

namespace dde {

/// Failure categories raised by the solver and analysis layers. Each code has
/// a stable machine-greppable word (see code_word) used by the C API and CLI.
enum class ErrorCode {
    InvalidArgument,
    MisalignedDelay,        // tau is not an integer multiple of h
    DelayShorterThanStep,   // 0 < tau < h/2 would need the unknown y_{n+1}
    MisalignedHorizon,      // T is not an integer multiple of h
    NonFiniteStage,         // a stage evaluation produced NaN/inf
    DivergedToNonFinite,    // a solution node became NaN/inf
    NewtonNoConvergence,
    SingularJacobian,
    IndexOutOfRange,        // internal delay-lookup contract violation
    NonPositiveError,       // order estimation hit E(h) == 0
    UnknownProblem,
    NoExactSolution,
};

/// Stable identifier for an error code, e.g. "MISALIGNED_DELAY".
const char* code_word(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dde
