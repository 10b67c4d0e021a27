#include "apdiv/field.hpp"

#include <sstream>

namespace apdiv {

std::string FieldSpec::describe() const {
    if (is_rationals() && minpoly[0] == 0) return "Q";
    std::ostringstream os;
    os << "Q(theta), minpoly [";
    for (std::size_t i = 0; i < minpoly.size(); ++i) {
        if (i) os << ", ";
        os << rat_to_string(minpoly[i]);
    }
    os << "], interval (" << rat_to_string(lo) << ", " << rat_to_string(hi) << ")";
    return os.str();
}

FieldPtr field_new(std::vector<Rat> minpoly, Rat lo, Rat hi, bool assert_irreducible) {
    if (minpoly.size() < 2)
        throw std::invalid_argument("minimal polynomial must have degree >= 1");
    if (minpoly.back() != 1)
        throw NonMonic("minimal polynomial must be monic");
    if (!(lo < hi))
        throw std::invalid_argument("isolating interval must satisfy lo < hi");

    const int deg = static_cast<int>(minpoly.size()) - 1;
    QPoly p(minpoly);
    if (p.degree() != deg)
        throw NonMonic("leading coefficient vanished");  // unreachable for monic input

    if (deg == 1) {
        Rat theta = -minpoly[0];
        if (!(lo < theta && theta < hi))
            throw NoRootInInterval("the rational root lies outside the open interval");
    } else {
        if (find_rational_root(p))
            throw RationalRootPresent("minimal polynomial has a rational root");
        if (deg >= 4 && !assert_irreducible)
            throw IrreducibilityNotCertified(
                "degree >= 4 requires assert_irreducible (only rational-root "
                "certification is built in)");
        // No rational roots, so the rational endpoints are not roots.
        int roots = sturm_root_count(p, lo, hi);
        if (roots == 0) throw NoRootInInterval("no root in the isolating interval");
        if (roots > 1) throw MultipleRootsInInterval("interval contains several roots");
        if (rat_sign(p.eval(lo)) * rat_sign(p.eval(hi)) != -1)
            throw MultipleRootsInInterval("isolated root has even multiplicity");
    }

    auto spec = std::make_shared<FieldSpec>();
    spec->minpoly = std::move(minpoly);
    spec->lo = std::move(lo);
    spec->hi = std::move(hi);
    spec->irreducibility_asserted = assert_irreducible && deg >= 4;
    return spec;
}

FieldPtr field_rationals() {
    static FieldPtr q = field_new({Rat(0), Rat(1)}, Rat(-1), Rat(1));
    return q;
}

namespace {

void require_same_field(const Scalar& a, const Scalar& b) {
    if (a.field() == b.field()) return;
    if (!(*a.field() == *b.field()))
        throw MixedFields("scalars belong to different fields");
}

QPoly minpoly_of(const FieldPtr& f) { return QPoly(f->minpoly); }

std::vector<Rat> reduce_mod(const FieldPtr& f, const QPoly& value) {
    QPoly rem = value.divmod(minpoly_of(f)).second;
    std::vector<Rat> c(rem.coeffs());
    c.resize(static_cast<std::size_t>(f->degree()), Rat(0));
    return c;
}

}  // namespace

Scalar::Scalar(FieldPtr field, std::vector<Rat> coeffs) : field_(std::move(field)) {
    if (!field_) throw std::invalid_argument("scalar needs a field");
    const auto deg = static_cast<std::size_t>(field_->degree());
    if (coeffs.size() > deg)
        throw DimensionMismatch("scalar has more coefficients than the field degree");
    coeffs.resize(deg, Rat(0));
    c_ = std::move(coeffs);
}

Scalar Scalar::rational(FieldPtr field, Rat value) {
    return Scalar(std::move(field), {std::move(value)});
}

Scalar Scalar::theta(FieldPtr field) {
    if (field->degree() == 1) {
        Rat value = -field->minpoly[0];
        return rational(std::move(field), std::move(value));
    }
    std::vector<Rat> c{Rat(0), Rat(1)};
    return Scalar(std::move(field), std::move(c));
}

bool Scalar::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Scalar::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(*this, o);
    std::vector<Rat> r(c_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
    return Scalar(field_, std::move(r));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    std::vector<Rat> r(c_);
    for (auto& x : r) x = -x;
    return Scalar(field_, std::move(r));
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(*this, o);
    QPoly prod = QPoly(c_) * QPoly(o.c_);
    return Scalar(field_, reduce_mod(field_, prod));
}

bool Scalar::operator==(const Scalar& o) const {
    require_same_field(*this, o);
    return c_ == o.c_;
}

Scalar inverse(const Scalar& a) {
    if (a.is_zero()) throw DivisionByZero("inverse of zero");
    const FieldPtr& f = a.field();
    // Extended Euclid: u*a + v*minpoly = g.
    QPoly r0 = minpoly_of(f), r1 = QPoly(a.coeffs());
    QPoly u0 = QPoly::zero(), u1 = QPoly::constant(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        QPoly u2 = u0 - q * u1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (r0.degree() != 0)
        throw DivisionByZero(
            "element is a zero divisor: the asserted minimal polynomial is reducible");
    QPoly inv = u0 * QPoly::constant(Rat(1) / r0.leading());
    return Scalar(f, reduce_mod(f, inv));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * inverse(b); }

namespace {

// Shrinks an isolating interval for theta by bisection; exact arithmetic.
struct RootRefiner {
    QPoly p;
    Rat lo, hi;
    int sign_lo;

    explicit RootRefiner(const FieldPtr& f)
        : p(minpoly_of(f)), lo(f->lo), hi(f->hi), sign_lo(rat_sign(p.eval(f->lo))) {}

    // Returns false when the midpoint is the root itself (rational theta).
    bool bisect() {
        Rat mid = (lo + hi) / 2;
        int sm = rat_sign(p.eval(mid));
        if (sm == 0) {
            lo = mid;
            hi = mid;
            return false;
        }
        if (sm == sign_lo)
            lo = std::move(mid);
        else
            hi = std::move(mid);
        return true;
    }
};

bool is_algebraic_zero(const Scalar& a) {
    if (a.is_zero()) return true;
    QPoly ap(a.coeffs());
    if (ap.degree() == 0) return false;
    QPoly g = poly_gcd(ap, minpoly_of(a.field()));
    if (g.degree() < 1) return false;
    const FieldSpec& f = *a.field();
    if (g.eval(f.lo) == 0 || g.eval(f.hi) == 0) return true;
    return sturm_root_count(g, f.lo, f.hi) > 0;
}

}  // namespace

int sign_of(const Scalar& a) {
    const FieldSpec& f = *a.field();
    if (f.is_rationals()) {
        return rat_sign(QPoly(a.coeffs()).eval(-f.minpoly[0]));
    }
    if (is_algebraic_zero(a)) return 0;
    QPoly ap(a.coeffs());
    RootRefiner ref(a.field());
    for (;;) {
        RatInterval v = ap.eval(RatInterval{ref.lo, ref.hi});
        if (v.lo > 0) return 1;
        if (v.hi < 0) return -1;
        if (!ref.bisect()) return rat_sign(ap.eval(ref.lo));
    }
}

Rat to_real(const Scalar& a, const Rat& precision) {
    if (!(precision > 0)) throw std::invalid_argument("precision must be positive");
    const FieldSpec& f = *a.field();
    QPoly ap(a.coeffs());
    if (f.is_rationals()) return ap.eval(-f.minpoly[0]);
    RootRefiner ref(a.field());
    for (;;) {
        RatInterval v = ap.eval(RatInterval{ref.lo, ref.hi});
        if (v.width() <= 2 * precision) return (v.lo + v.hi) / 2;
        if (!ref.bisect()) return ap.eval(ref.lo);
    }
}

double to_double(const Scalar& a) {
    static const Rat prec(Int(1), Int(1) << 60);
    return rat_to_double(to_real(a, prec));
}

std::string to_literal(const Scalar& a) {
    std::ostringstream os;
    os << "[";
    const auto& c = a.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ", ";
        os << rat_to_string(c[i]);
    }
    os << "]";
    return os.str();
}

}  // namespace apdiv
