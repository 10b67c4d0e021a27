#pragma once

#include "apdiv/divisor.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace apdiv {

/// A degenerate model pair (gamma * nu, nu): both frequency vectors are
/// proportional over the field, so the summand always carries a function
/// with almost-periodic modulus.
struct DegeneratePair {
    Scalar gamma;
    ScalarVec nu;

    std::string to_text() const;  // "(gamma | nu_1, ..., nu_m)"
};

/// Terms W(alpha e^p, beta e^q) collected on one axis pair p <= q
/// (0-based).  Invariant: no term has a zero scalar.
struct TermList {
    FieldPtr field;
    int m = 0;
    int axis_p = 0;
    int axis_q = 0;
    std::vector<std::pair<Scalar, Scalar>> terms;

    /// Sum of alpha_j * beta_j over the terms.
    Scalar pairing_sum() const;
};

struct RewriteStep {
    enum class Rule { DropZero, FlipSign, DiagonalDirect, Merge };

    Rule rule;
    int axis_p = 0, axis_q = 0;       // bucket the step acts on (0-based)
    int src_p = -1, src_q = -1;       // flip-sign only: original axes
    std::vector<std::pair<Scalar, Scalar>> consumed;
    std::vector<std::pair<Scalar, Scalar>> produced;
    std::vector<DegeneratePair> emitted;
};

/// Audit trail of a decomposition: replaying the ordered steps on the
/// bucketized input reproduces `result` deterministically, and
/// input_class == output_class restates the exactness of the rewrite.
struct Certificate {
    std::vector<RewriteStep> steps;
    std::vector<DegeneratePair> result;
    Wedge2 input_class;
    Wedge2 output_class;

    std::string to_text() const;
};

struct BucketizedDivisor {
    std::map<std::pair<int, int>, TermList> buckets;  // key (p, q), p <= q
    std::vector<RewriteStep> steps;                   // drops and flips
};

/// Expands every summand coordinate-wise, folds multiplicities into term
/// repetition (negative multiplicity negates alpha), drops zero-scalar
/// terms, and flips below-diagonal terms onto their mirror bucket via
/// W(a e^p, b e^q) = W(-b e^q, a e^p).
BucketizedDivisor bucketize(const Divisor& d);

/// Rewrites an off-diagonal term list with pairing_sum() = 0 into at most
/// 3 * (n - 1) degenerate pairs by repeatedly merging the last two terms.
/// Throws ConstraintViolated when the pairing sum is nonzero.
std::pair<std::vector<DegeneratePair>, Certificate> reduce_terms(const TermList& t);

/// Full constructive decomposition.  Requires a symmetric gram sum
/// (throws NotSymmetricGram naming the offending entries); the returned
/// pairs satisfy class_of(d) = sum of wedge(gamma*nu, nu).
std::pair<std::vector<DegeneratePair>, Certificate> decompose(const Divisor& d);

/// Sum of wedge(embed(gamma*nu), embed(nu)) over the pairs.
Wedge2 degenerate_class_sum(const FieldPtr& field,
                            const std::vector<DegeneratePair>& pairs);

/// Exact audit: class_of(d) equals the degenerate class sum.
bool verify_certificate(const Divisor& d, const std::vector<DegeneratePair>& pairs);

}  // namespace apdiv
