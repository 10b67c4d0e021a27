#pragma once

#include "apdiv/rational.hpp"

#include <optional>
#include <vector>

namespace apdiv {

/// Closed rational interval, used for outward-rounded evaluation.
struct RatInterval {
    Rat lo, hi;

    RatInterval operator+(const RatInterval& o) const;
    RatInterval operator*(const RatInterval& o) const;
    Rat width() const { return hi - lo; }
};

/// Dense univariate polynomial over the rationals, coefficients low to high.
/// Invariant: empty vector means zero, otherwise the leading coefficient is
/// nonzero.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs);

    static QPoly zero() { return QPoly(); }
    static QPoly constant(Rat c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const { return c_.back(); }
    const Rat& coeff(std::size_t i) const;

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator-() const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<QPoly, QPoly> divmod(const QPoly& divisor) const;

    QPoly derivative() const;
    Rat eval(const Rat& x) const;
    RatInterval eval(const RatInterval& x) const;

    /// Divides by the leading coefficient; polynomial must be nonzero.
    QPoly monic() const;

private:
    std::vector<Rat> c_;
    void normalize();
};

/// Monic gcd (Euclid); gcd(0, 0) = 0.
QPoly poly_gcd(const QPoly& a, const QPoly& b);

/// Number of distinct real roots in the open interval (lo, hi).
/// Precondition: p(lo) != 0 and p(hi) != 0.
int sturm_root_count(const QPoly& p, const Rat& lo, const Rat& hi);

/// Some rational root of p, if any exists (rational root theorem after
/// clearing denominators).  p must be nonzero.
std::optional<Rat> find_rational_root(const QPoly& p);

int rat_sign(const Rat& r);

}  // namespace apdiv
