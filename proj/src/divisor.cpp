#include "apdiv/divisor.hpp"

#include "apdiv/errors.hpp"

#include <stdexcept>

namespace apdiv {

Scalar dot(const ScalarVec& a, const ScalarVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    if (a.empty()) throw DimensionMismatch("dot: empty vectors");
    Scalar acc = Scalar::zero(a[0].field());
    for (std::size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
    return acc;
}

bool is_zero_vec(const ScalarVec& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

ScalarVec scale_vec(const Scalar& c, const ScalarVec& v) {
    ScalarVec out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(c * s);
    return out;
}

Divisor::Divisor(FieldPtr field, int m, std::vector<Pair> pairs)
    : field_(std::move(field)), m_(m), pairs_(std::move(pairs)) {
    if (!field_) throw std::invalid_argument("divisor needs a field");
    if (m_ < 1) throw DimensionMismatch("divisor needs m >= 1");
    for (const auto& p : pairs_) {
        if (static_cast<int>(p.lambda.size()) != m_ ||
            static_cast<int>(p.mu.size()) != m_)
            throw DimensionMismatch("pair vectors must have length m");
        for (const auto& s : p.lambda)
            if (!(*s.field() == *field_)) throw MixedFields("pair scalar from a different field");
        for (const auto& s : p.mu)
            if (!(*s.field() == *field_)) throw MixedFields("pair scalar from a different field");
        if (p.mult == 0) throw std::invalid_argument("pair multiplicity must be nonzero");
        if (is_zero_vec(p.lambda) && is_zero_vec(p.mu))
            throw std::invalid_argument("the zero pair is a unit and is not a valid summand");
    }
}

Divisor Divisor::operator+(const Divisor& o) const {
    if (m_ != o.m_) throw DimensionMismatch("divisor sum: different m");
    if (!(*field_ == *o.field_)) throw MixedFields("divisor sum: different fields");
    std::vector<Pair> all = pairs_;
    all.insert(all.end(), o.pairs_.begin(), o.pairs_.end());
    return Divisor(field_, m_, std::move(all));
}

ScalarMatrix::ScalarMatrix(FieldPtr field, int n)
    : field_(std::move(field)), n_(n) {
    if (n_ < 1) throw DimensionMismatch("matrix needs n >= 1");
    e_.assign(static_cast<std::size_t>(n_) * n_, Scalar::zero(field_));
}

const Scalar& ScalarMatrix::at(int j, int k) const {
    return e_[static_cast<std::size_t>(j) * n_ + k];
}

void ScalarMatrix::set(int j, int k, Scalar v) {
    e_[static_cast<std::size_t>(j) * n_ + k] = std::move(v);
}

ScalarMatrix ScalarMatrix::operator+(const ScalarMatrix& o) const {
    if (n_ != o.n_) throw DimensionMismatch("matrix sum: size mismatch");
    ScalarMatrix out(field_, n_);
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) out.set(j, k, at(j, k) + o.at(j, k));
    return out;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
    if (n_ != o.n_) throw DimensionMismatch("matrix product: size mismatch");
    ScalarMatrix out(field_, n_);
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) {
            Scalar acc = Scalar::zero(field_);
            for (int s = 0; s < n_; ++s) acc = acc + at(j, s) * o.at(s, k);
            out.set(j, k, std::move(acc));
        }
    return out;
}

ScalarMatrix ScalarMatrix::transposed() const {
    ScalarMatrix out(field_, n_);
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) out.set(j, k, at(k, j));
    return out;
}

bool ScalarMatrix::operator==(const ScalarMatrix& o) const {
    if (n_ != o.n_) return false;
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
            if (!(at(j, k) == o.at(j, k))) return false;
    return true;
}

bool ScalarMatrix::is_zero() const {
    for (const auto& s : e_)
        if (!s.is_zero()) return false;
    return true;
}

AMatrix AMatrix::checked(ScalarMatrix m) {
    const int n = m.size();
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
            if (!(m.at(j, k) == -m.at(k, j)))
                throw std::logic_error("matrix is not skew-symmetric");
    return AMatrix{std::move(m)};
}

GramMatrix outer(const ScalarVec& lambda, const ScalarVec& mu) {
    if (lambda.size() != mu.size() || lambda.empty())
        throw DimensionMismatch("outer: length mismatch");
    ScalarMatrix out(lambda[0].field(), static_cast<int>(lambda.size()));
    for (std::size_t j = 0; j < lambda.size(); ++j)
        for (std::size_t k = 0; k < mu.size(); ++k)
            out.set(static_cast<int>(j), static_cast<int>(k), lambda[j] * mu[k]);
    return out;
}

namespace {

ScalarMatrix scaled_by_int(const ScalarMatrix& m, long long k) {
    Scalar factor = Scalar::rational(m.field(), Rat(k));
    ScalarMatrix out(m.field(), m.size());
    for (int j = 0; j < m.size(); ++j)
        for (int s = 0; s < m.size(); ++s) out.set(j, s, factor * m.at(j, s));
    return out;
}

}  // namespace

GramMatrix gram_sum(const Divisor& d) {
    ScalarMatrix acc(d.field(), d.m());
    for (const auto& p : d.pairs())
        acc = acc + scaled_by_int(outer(p.lambda, p.mu), p.mult);
    return acc;
}

bool is_symmetric(const GramMatrix& g) {
    for (int j = 0; j < g.size(); ++j)
        for (int k = j + 1; k < g.size(); ++k)
            if (!(g.at(j, k) == g.at(k, j))) return false;
    return true;
}

AMatrix skew_matrix(const Divisor& d) {
    ScalarMatrix acc(d.field(), d.m());
    for (const auto& p : d.pairs()) {
        ScalarMatrix term = outer(p.mu, p.lambda) + scaled_by_int(outer(p.lambda, p.mu), -1);
        acc = acc + scaled_by_int(term, p.mult);
    }
    return AMatrix::checked(std::move(acc));
}

bool ap_modulus_criterion(const Divisor& d) { return skew_matrix(d).entries.is_zero(); }

AMatrix congruence(const ScalarMatrix& b, const AMatrix& a0) {
    return AMatrix::checked(b.transposed() * a0.entries * b);
}

std::pair<ScalarVec, ScalarVec> periods(const ScalarVec& lambda, const ScalarVec& mu) {
    Scalar ll = dot(lambda, lambda);
    Scalar mm = dot(mu, mu);
    Scalar lm = dot(lambda, mu);
    Scalar det = ll * mm - lm * lm;
    if (det.is_zero())
        throw RDependentPair("lambda and mu are dependent over R; no period pair exists");
    Scalar inv_det = inverse(det);
    ScalarVec p1, p2;
    p1.reserve(lambda.size());
    p2.reserve(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        p1.push_back((mm * lambda[i] - lm * mu[i]) * inv_det);
        p2.push_back((ll * mu[i] - lm * lambda[i]) * inv_det);
    }
    return {std::move(p1), std::move(p2)};
}

PairClass classify_pair(const ScalarVec& lambda, const ScalarVec& mu) {
    if (lambda.size() != mu.size() || lambda.empty())
        throw DimensionMismatch("classify_pair: length mismatch");
    const FieldPtr& f = lambda[0].field();

    PairClass out;
    out.q_dependent = wedge(embed(lambda, f), embed(mu, f)).is_zero();

    // Dependent over R iff the 2 x m frequency matrix has rank <= 1,
    // i.e. all 2 x 2 minors vanish (exactly, in the field).
    out.r_dependent = true;
    for (std::size_t j = 0; j < lambda.size() && out.r_dependent; ++j)
        for (std::size_t k = j + 1; k < lambda.size(); ++k) {
            if (!(lambda[j] * mu[k] - lambda[k] * mu[j]).is_zero()) {
                out.r_dependent = false;
                break;
            }
        }

    out.periodic = out.q_dependent || !out.r_dependent;
    out.holo_ap_divisor = out.q_dependent;
    out.ap_modulus = out.r_dependent || out.q_dependent;
    return out;
}

Wedge2 class_of(const Divisor& d) {
    Wedge2 acc;
    for (const auto& p : d.pairs()) {
        Wedge2 w = wedge(embed(p.lambda, d.field()), embed(p.mu, d.field()));
        acc = acc + scale_wedge(Int(p.mult), w);
    }
    return acc;
}

}  // namespace apdiv
