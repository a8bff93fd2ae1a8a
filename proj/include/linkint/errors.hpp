#pragma once

#include <stdexcept>
#include <string>

namespace linkint {

// Exception taxonomy mirrors the CLI exit codes:
//   InvalidInput -> 2, ComputationRejected -> 3, NumericalFailure -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};

struct TagMismatch : InvalidInput {
    TagMismatch() : InvalidInput("space tags of operands do not match") {}
    using InvalidInput::InvalidInput;
};

// Kernel or geometric operation evaluated at a point of its singular locus.
struct Singular : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Parallel transport between antipodal points of the 3-sphere.
struct AmbiguousTransport : InvalidInput {
    AmbiguousTransport() : InvalidInput("parallel transport between antipodal points is ambiguous") {}
};

struct ComputationRejected : Error {
    using Error::Error;
};

struct CurvesTooClose : ComputationRejected {
    using ComputationRejected::ComputationRejected;
};

struct SelfIntersectionSuspected : ComputationRejected {
    using ComputationRejected::ComputationRejected;
};

struct NumericalFailure : Error {
    using Error::Error;
};

}  // namespace linkint
