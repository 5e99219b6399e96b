#include "ddesolve/error.hpp"

namespace dde {

const char* code_word(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
        case ErrorCode::MisalignedDelay: return "MISALIGNED_DELAY";
        case ErrorCode::DelayShorterThanStep: return "DELAY_SHORTER_THAN_STEP";
        case ErrorCode::MisalignedHorizon: return "MISALIGNED_HORIZON";
        case ErrorCode::NonFiniteStage: return "NONFINITE_STAGE";
        case ErrorCode::DivergedToNonFinite: return "NONFINITE";
        case ErrorCode::NewtonNoConvergence: return "NEWTON_FAIL";
        case ErrorCode::SingularJacobian: return "SINGULAR_JACOBIAN";
        case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
        case ErrorCode::NonPositiveError: return "NONPOSITIVE_ERROR";
        case ErrorCode::UnknownProblem: return "UNKNOWN_PROBLEM";
        case ErrorCode::NoExactSolution: return "NO_EXACT_SOLUTION";
    }
    return "UNKNOWN";
}

}  // namespace dde
