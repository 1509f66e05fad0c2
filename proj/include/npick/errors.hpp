#pragma once

#include <stdexcept>
#include <string>

namespace npick {

// Base class for every failure the library can signal. All conditions are
// reported with the offending quantity in the message so callers can log
// them without re-deriving context.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : NumericError {
    using NumericError::NumericError;
};

struct NotPSD : NumericError {
    using NumericError::NumericError;
};

struct EigenFailure : NumericError {
    using NumericError::NumericError;
};

struct NotStable : NumericError {
    using NumericError::NumericError;
};

struct NotConvergent : NumericError {
    using NumericError::NumericError;
};

struct IterationLimit : NumericError {
    using NumericError::NumericError;
};

struct OrderOverflow : NumericError {
    using NumericError::NumericError;
};

struct PNotStrictlyPositive : NumericError {
    using NumericError::NumericError;
};

struct LambdaNotStrictlyPositive : NumericError {
    using NumericError::NumericError;
};

struct ParameterNotContractive : NumericError {
    using NumericError::NumericError;
};

struct ResolventSingular : NumericError {
    using NumericError::NumericError;
};

struct FeedbackSingular : NumericError {
    using NumericError::NumericError;
};

struct NoConvergence : NumericError {
    using NumericError::NumericError;
};

struct NotCoisometricPair : NumericError {
    using NumericError::NumericError;
};

struct QuadratureDegenerate : NumericError {
    using NumericError::NumericError;
};

struct DimensionMismatch : NumericError {
    using NumericError::NumericError;
};

}  // namespace npick
