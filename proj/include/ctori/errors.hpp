#ifndef CTORI_ERRORS_HPP
#define CTORI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ctori {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation of the unsmoothed reduced form too close to h^{-1}(0).
struct SingularLocus : NumericalError {
    using NumericalError::NumericalError;
};

// Gram matrix of the interpolated Kahler metric failed positivity / conditioning.
struct DegenerateMetric : NumericalError {
    using NumericalError::NumericalError;
};

struct LeftDomain : NumericalError {
    using NumericalError::NumericalError;
};

struct NearSingularLocus : NumericalError {
    using NumericalError::NumericalError;
};

struct QuadratureDivergence : NumericalError {
    using NumericalError::NumericalError;
};

// A coordinate function vanishes on the boundary circle, so its winding
// number (and hence the intersection count) is undefined.
struct BoundaryZero : NumericalError {
    using NumericalError::NumericalError;
};

struct NonTransverse : NumericalError {
    using NumericalError::NumericalError;
};

struct FrameDegenerate : NumericalError {
    using NumericalError::NumericalError;
};

struct PointOnBoundary : NumericalError {
    using NumericalError::NumericalError;
};

struct UnexpectedZero : NumericalError {
    using NumericalError::NumericalError;
};

struct BranchJump : NumericalError {
    using NumericalError::NumericalError;
};

struct SamplingInsufficient : NumericalError {
    using NumericalError::NumericalError;
};

struct TooCloseToC : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace ctori

#endif
