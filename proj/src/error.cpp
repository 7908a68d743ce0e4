#include "bulgsol/error.hpp"

namespace bulgsol {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotSorted: return "NotSorted";
    case ErrorCode::NonPositivePart: return "NonPositivePart";
    case ErrorCode::NegativeX: return "NegativeX";
    case ErrorCode::EmptyPartition: return "EmptyPartition";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::QOutOfRange: return "QOutOfRange";
    case ErrorCode::SigmaExceedsPile: return "SigmaExceedsPile";
    case ErrorCode::PileTooLarge: return "PileTooLarge";
    case ErrorCode::MissingLevelOne: return "MissingLevelOne";
    case ErrorCode::Unsorted: return "Unsorted";
    case ErrorCode::NotWellBehaved: return "NotWellBehaved";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::SigmaBarDecreasing: return "SigmaBarDecreasing";
    case ErrorCode::NotStableReference: return "NotStableReference";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonPositiveZ: return "NonPositiveZ";
    case ErrorCode::NonPositiveC: return "NonPositiveC";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotConvexShape: return "NotConvexShape";
    case ErrorCode::DerivativeNotMultipleOfC: return "DerivativeNotMultipleOfC";
    case ErrorCode::AreaExceedsOne: return "AreaExceedsOne";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::BadInput: return "BadInput";
    }
    return "UnknownError";
}

} // namespace bulgsol
