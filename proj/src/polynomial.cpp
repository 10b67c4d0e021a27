#include "apdiv/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace apdiv {

int rat_sign(const Rat& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

RatInterval RatInterval::operator+(const RatInterval& o) const {
    return {lo + o.lo, hi + o.hi};
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)),
            std::max(std::max(a, b), std::max(c, d))};
}

QPoly::QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }

void QPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::constant(Rat c) {
    QPoly p;
    if (c != 0) p.c_.push_back(std::move(c));
    return p;
}

const Rat& QPoly::coeff(std::size_t i) const {
    static const Rat zero(0);
    return i < c_.size() ? c_[i] : zero;
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
    std::vector<Rat> r(c_);
    for (auto& x : r) x = -x;
    return QPoly(std::move(r));
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return QPoly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return QPoly(std::move(r));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rat> rem(c_);
    int dd = divisor.degree();
    int dr = static_cast<int>(rem.size()) - 1;
    if (dr < dd) return {QPoly(), *this};
    std::vector<Rat> quo(dr - dd + 1, Rat(0));
    const Rat& lead = divisor.leading();
    for (int k = dr - dd; k >= 0; --k) {
        Rat q = rem[k + dd] / lead;
        quo[k] = q;
        if (q == 0) continue;
        for (int i = 0; i <= dd; ++i) rem[k + i] -= q * divisor.c_[i];
    }
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return QPoly();
    std::vector<Rat> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return QPoly(std::move(r));
}

Rat QPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

RatInterval QPoly::eval(const RatInterval& x) const {
    RatInterval acc{Rat(0), Rat(0)};
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = acc * x;
        acc.lo += c_[i];
        acc.hi += c_[i];
    }
    return acc;
}

QPoly QPoly::monic() const {
    if (is_zero()) throw std::invalid_argument("monic of zero polynomial");
    std::vector<Rat> r(c_);
    const Rat lead = c_.back();
    for (auto& x : r) x /= lead;
    return QPoly(std::move(r));
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

namespace {

// Canonical chain p, p', -rem(...), ...; positive rescaling keeps signs.
std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain;
    chain.push_back(p);
    QPoly d = p.derivative();
    if (!d.is_zero()) chain.push_back(d);
    while (chain.size() >= 2 && !chain.back().is_zero()) {
        QPoly r = -(chain[chain.size() - 2].divmod(chain.back()).second);
        if (r.is_zero()) break;
        Rat scale = r.leading();
        if (scale < 0) scale = -scale;
        std::vector<Rat> c(r.coeffs());
        for (auto& x : c) x /= scale;
        chain.push_back(QPoly(std::move(c)));
    }
    return chain;
}

int sign_variations(const std::vector<QPoly>& chain, const Rat& x) {
    int count = 0, prev = 0;
    for (const auto& q : chain) {
        int s = rat_sign(q.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

}  // namespace

int sturm_root_count(const QPoly& p, const Rat& lo, const Rat& hi) {
    if (p.eval(lo) == 0 || p.eval(hi) == 0)
        throw std::invalid_argument("sturm_root_count: endpoint is a root");
    auto chain = sturm_chain(p);
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

namespace {

std::vector<Int> positive_divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> out;
    for (Int i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            out.push_back(i);
            if (i * i != n) out.push_back(n / i);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::optional<Rat> find_rational_root(const QPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("find_rational_root: zero polynomial");
    if (p.degree() == 0) return std::nullopt;
    Int lcm_den(1);
    for (const auto& c : p.coeffs()) {
        Int d = boost::multiprecision::denominator(c);
        lcm_den = boost::multiprecision::lcm(lcm_den, d);
    }
    std::vector<Int> a;
    a.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        Rat scaled = c * Rat(lcm_den);
        a.push_back(boost::multiprecision::numerator(scaled));
    }
    if (a.front() == 0) return Rat(0);
    for (const Int& r : positive_divisors(a.front())) {
        for (const Int& s : positive_divisors(a.back())) {
            if (boost::multiprecision::gcd(r, s) != 1) continue;
            Rat cand(r, s);
            if (p.eval(cand) == 0) return cand;
            if (p.eval(-cand) == 0) return -cand;
        }
    }
    return std::nullopt;
}

}  // namespace apdiv
