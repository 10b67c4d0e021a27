#pragma once

#include "apdiv/errors.hpp"
#include "apdiv/polynomial.hpp"
#include "apdiv/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace apdiv {

/// A real algebraic number field Q(theta).  theta is pinned down by a monic
/// minimal polynomial together with a rational interval (lo, hi) that
/// isolates exactly one real root.  Degree-1 specs describe Q itself.
///
/// Degrees 2 and 3 are certified irreducible on construction (no rational
/// root).  Higher degrees additionally require the caller to assert
/// irreducibility; a rational root is still rejected outright.
struct FieldSpec {
    std::vector<Rat> minpoly;  // c0 .. c_deg, monic
    Rat lo, hi;                // isolating interval, lo < theta < hi strictly
    bool irreducibility_asserted = false;

    int degree() const { return static_cast<int>(minpoly.size()) - 1; }
    bool is_rationals() const { return degree() == 1; }
    bool operator==(const FieldSpec& o) const {
        return minpoly == o.minpoly && lo == o.lo && hi == o.hi;
    }
    std::string describe() const;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Validates and constructs a field.  Throws NonMonic, RationalRootPresent,
/// IrreducibilityNotCertified, NoRootInInterval, MultipleRootsInInterval.
FieldPtr field_new(std::vector<Rat> minpoly, Rat lo, Rat hi,
                   bool assert_irreducible = false);

/// Q, encoded as the degree-1 field with minimal polynomial x.
FieldPtr field_rationals();

/// Element of Q(theta) in the power basis 1, theta, ..., theta^(deg-1).
class Scalar {
public:
    Scalar(FieldPtr field, std::vector<Rat> coeffs);

    static Scalar rational(FieldPtr field, Rat value);
    static Scalar zero(FieldPtr field) { return rational(std::move(field), 0); }
    static Scalar one(FieldPtr field) { return rational(std::move(field), 1); }
    /// The generator theta itself.
    static Scalar theta(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const;
    /// True when every theta-coefficient above degree 0 vanishes.
    bool is_rational() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    bool operator==(const Scalar& o) const;

private:
    FieldPtr field_;
    std::vector<Rat> c_;  // exactly degree() entries
};

/// Multiplicative inverse; throws DivisionByZero on zero (and on the zero
/// divisors that can arise when irreducibility was asserted falsely).
Scalar inverse(const Scalar& a);
Scalar operator/(const Scalar& a, const Scalar& b);

/// Exact sign (-1, 0, +1) of the real number a(theta), by interval
/// refinement of the isolating interval; the zero test is algebraic
/// (gcd with the minimal polynomial), so the refinement terminates.
int sign_of(const Scalar& a);

/// Rational approximation within +/- precision of a(theta); precision > 0.
Rat to_real(const Scalar& a, const Rat& precision);

/// Double image (to_real at 2^-60, then rounded to double).
double to_double(const Scalar& a);

/// Exact literal "[c0, c1, ...]"; always degree() entries.
std::string to_literal(const Scalar& a);

}  // namespace apdiv
