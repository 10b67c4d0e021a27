#pragma once

#include <stdexcept>

namespace apdiv {

// Field construction rejects.
struct NonMonic : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NoRootInInterval : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct MultipleRootsInInterval : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct RationalRootPresent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// Degree >= 4 minimal polynomials are accepted only when the caller
// opts in with assert_irreducible; there is no built-in factorisation.
struct IrreducibilityNotCertified : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};
struct MixedFields : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Periods exist only for pairs that are linearly independent over the reals.
struct RDependentPair : std::domain_error {
    using std::domain_error::domain_error;
};
// Term-list reduction requires the alpha/beta products to sum to zero.
struct ConstraintViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// Decomposition requires a symmetric gram sum.
struct NotSymmetricGram : std::domain_error {
    using std::domain_error::domain_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerics: lambda = mu = 0 spans no zero set.
struct DegenerateFrequencyPair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SupportExceedsBox : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace apdiv
