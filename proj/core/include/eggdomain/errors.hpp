#pragma once

#include <stdexcept>
#include <string>

namespace eggdomain {

/// Input-validation failure: bad shapes, parameters outside their preconditions,
/// points outside the domain.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ShapeMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct InvalidBasePoint : ValidationError {
    using ValidationError::ValidationError;
};

struct InadmissibleWitness : ValidationError {
    using ValidationError::ValidationError;
};

struct UnsupportedKind : ValidationError {
    using ValidationError::ValidationError;
};

/// Bisection precondition failure: the margin has the same sign at both bracket ends.
struct NoSignChange : ValidationError {
    using ValidationError::ValidationError;
};

/// Numeric-evaluation failure raised while computing an otherwise valid request.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation too close to the kernel singularity (X -> 1) or the domain boundary.
struct NumericalOverflow : NumericError {
    using NumericError::NumericError;
};

struct CutoffTooSmall : NumericError {
    using NumericError::NumericError;
};

struct InsufficientSamples : NumericError {
    using NumericError::NumericError;
};

struct DegenerateZeroPolynomial : NumericError {
    using NumericError::NumericError;
};

/// The Bergman kernel vanishes (or nearly vanishes) at a pair required by a
/// logarithmic derivative; this is exactly the obstruction to representative
/// coordinates.
struct KernelZeroOnPath : NumericError {
    using NumericError::NumericError;
};

struct SingularMetric : NumericError {
    using NumericError::NumericError;
};

} // namespace eggdomain
