#pragma once

#include "apdiv/field.hpp"
#include "apdiv/wedge.hpp"

#include <vector>

namespace apdiv {

using ScalarVec = std::vector<Scalar>;

/// Sum of componentwise products; vectors must have equal length.
Scalar dot(const ScalarVec& a, const ScalarVec& b);
bool is_zero_vec(const ScalarVec& v);
ScalarVec scale_vec(const Scalar& c, const ScalarVec& v);

/// One model-divisor summand: the zero set of exp(<z, lambda + i mu>) - 1
/// taken with an integer multiplicity (negative values allowed; the
/// divisors form a group under formal sums).
struct Pair {
    ScalarVec lambda, mu;
    long long mult = 1;
};

/// Formal integer combination of model divisors over a fixed field and a
/// fixed number of complex variables m.  Invariants checked on
/// construction: every vector has length m, every scalar lives in the
/// field, mult != 0, and no pair has lambda = mu = 0.
class Divisor {
public:
    Divisor(FieldPtr field, int m, std::vector<Pair> pairs);

    static Divisor empty(FieldPtr field, int m) { return Divisor(std::move(field), m, {}); }

    const FieldPtr& field() const { return field_; }
    int m() const { return m_; }
    const std::vector<Pair>& pairs() const { return pairs_; }

    /// Concatenation of summand lists (formal sum).
    Divisor operator+(const Divisor& o) const;

private:
    FieldPtr field_;
    int m_;
    std::vector<Pair> pairs_;
};

/// Dense m x m matrix of field elements.
class ScalarMatrix {
public:
    ScalarMatrix(FieldPtr field, int n);

    int size() const { return n_; }
    const FieldPtr& field() const { return field_; }
    const Scalar& at(int j, int k) const;
    void set(int j, int k, Scalar v);

    ScalarMatrix operator+(const ScalarMatrix& o) const;
    ScalarMatrix operator*(const ScalarMatrix& o) const;
    ScalarMatrix transposed() const;
    bool operator==(const ScalarMatrix& o) const;
    bool is_zero() const;

private:
    FieldPtr field_;
    int n_;
    std::vector<Scalar> e_;
};

using GramMatrix = ScalarMatrix;

/// Skew-symmetric matrix; construction verifies a_jk = -a_kj and zero
/// diagonal and throws std::logic_error otherwise.
struct AMatrix {
    ScalarMatrix entries;

    static AMatrix checked(ScalarMatrix m);
};

/// Rank-one product: out_jk = lambda_j * mu_k.
GramMatrix outer(const ScalarVec& lambda, const ScalarVec& mu);

/// Sum over pairs of mult * outer(lambda, mu).
GramMatrix gram_sum(const Divisor& d);

bool is_symmetric(const GramMatrix& g);

/// A(d) = sum of mult * (outer(mu, lambda) - outer(lambda, mu)).
/// Equals gram_sum(d)^T - gram_sum(d).
AMatrix skew_matrix(const Divisor& d);

/// True exactly when A(d) = 0, i.e. when the divisor carries a function
/// with almost-periodic modulus.
bool ap_modulus_criterion(const Divisor& d);

/// Change of frequency basis: B^T * A0 * B.
AMatrix congruence(const ScalarMatrix& b, const AMatrix& a0);

/// The two translations P1, P2 with <P1,lambda> = 1, <P1,mu> = 0,
/// <P2,lambda> = 0, <P2,mu> = 1; requires lambda, mu independent over R
/// (throws RDependentPair otherwise).
std::pair<ScalarVec, ScalarVec> periods(const ScalarVec& lambda, const ScalarVec& mu);

struct PairClass {
    bool q_dependent = false;   // dependent over Q
    bool r_dependent = false;   // dependent over R
    bool periodic = false;      // zero set invariant under a translation lattice
    bool holo_ap_divisor = false;  // divisor of a holomorphic almost-periodic function
    bool ap_modulus = false;       // divisor of a function with almost-periodic modulus
};

PairClass classify_pair(const ScalarVec& lambda, const ScalarVec& mu);

/// Sum over pairs of mult * embed(lambda) ^ embed(mu).  The complete
/// obstruction for divisors in this model: it vanishes exactly on
/// divisors decomposable into degenerate pairs.
Wedge2 class_of(const Divisor& d);

}  // namespace apdiv
