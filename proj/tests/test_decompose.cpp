#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apdiv/decompose.hpp"

#include <map>
#include <random>
#include <utility>
#include <vector>

using namespace apdiv;

namespace {

// ---------------------------------------------------------------------------
// Independent oracle for the wedge class of a divisor.  Expands everything
// by brute force over the rationals without touching the library's wedge or
// embedding code: a divisor pair (lambda, mu) with multiplicity c
// contributes c * (u_i ^ u_j) coefficients u_i v_j - u_j v_i, where u, v are
// the raw coefficient vectors of lambda, mu flattened over the power basis.
// ---------------------------------------------------------------------------

using DenseWedge = std::map<std::pair<int, int>, Rat>;

std::vector<Rat> oracle_flatten(const ScalarVec& v, int deg) {
    std::vector<Rat> out;
    for (const Scalar& s : v)
        for (int i = 0; i < deg; ++i) out.push_back(s.coeffs()[static_cast<std::size_t>(i)]);
    return out;
}

void oracle_accumulate(DenseWedge& acc, const std::vector<Rat>& u,
                       const std::vector<Rat>& v, const Rat& c) {
    const int n = static_cast<int>(u.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rat term = c * (u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] -
                            u[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(i)]);
            if (term == 0) continue;
            auto it = acc.find({i, j});
            if (it == acc.end()) {
                acc.emplace(std::make_pair(i, j), term);
            } else {
                it->second += term;
                if (it->second == 0) acc.erase(it);
            }
        }
}

DenseWedge oracle_class(const Divisor& d) {
    DenseWedge acc;
    const int deg = d.field()->degree();
    for (const Pair& p : d.pairs())
        oracle_accumulate(acc, oracle_flatten(p.lambda, deg),
                          oracle_flatten(p.mu, deg), Rat(p.mult));
    return acc;
}

DenseWedge oracle_degenerate_class(const FieldPtr& f,
                                   const std::vector<DegeneratePair>& pairs) {
    DenseWedge acc;
    const int deg = f->degree();
    for (const DegeneratePair& p : pairs)
        oracle_accumulate(acc, oracle_flatten(scale_vec(p.gamma, p.nu), deg),
                          oracle_flatten(p.nu, deg), Rat(1));
    return acc;
}

DenseWedge as_dense(const Wedge2& w) {
    DenseWedge out;
    for (const auto& [ij, c] : w.terms()) out.emplace(ij, c);
    return out;
}

FieldPtr q_sqrt2() { return field_new({Rat(-2), Rat(0), Rat(1)}, Rat(1), Rat(3) / 2); }

ScalarVec unit(const FieldPtr& f, int m, int axis) {
    ScalarVec v(static_cast<std::size_t>(m), Scalar::zero(f));
    v[static_cast<std::size_t>(axis)] = Scalar::one(f);
    return v;
}

Divisor worked_instance() {
    auto f = q_sqrt2();
    auto t = Scalar::theta(f);
    // d[e1, sqrt2 e2] + d[sqrt2 e1, -e2]
    ScalarVec l1 = unit(f, 2, 0);
    ScalarVec m1{Scalar::zero(f), t};
    ScalarVec l2{t, Scalar::zero(f)};
    ScalarVec m2{Scalar::zero(f), -Scalar::one(f)};
    return Divisor(f, 2, {Pair{l1, m1, 1}, Pair{l2, m2, 1}});
}

Rat rand_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    return Rat(num(rng), den(rng));
}

Scalar rand_scalar(const FieldPtr& f, std::mt19937_64& rng) {
    std::vector<Rat> c;
    for (int i = 0; i < f->degree(); ++i) c.push_back(rand_rat(rng));
    return Scalar(f, std::move(c));
}

ScalarVec rand_vec(const FieldPtr& f, int m, std::mt19937_64& rng) {
    ScalarVec v;
    for (int i = 0; i < m; ++i) v.push_back(rand_scalar(f, rng));
    return v;
}

// Random divisor with a symmetric gram sum: mirrored off-diagonal pairs
// (lambda, mu) + (mu, lambda) plus rationally-proportional diagonal pairs.
Divisor rand_symmetric_divisor(const FieldPtr& f, int m, int max_pairs,
                               std::mt19937_64& rng) {
    std::uniform_int_distribution<int> mult(-2, 2), coin(0, 1), ratio(1, 3);
    std::vector<Pair> ps;
    while (ps.empty() || static_cast<int>(ps.size()) < max_pairs - 1) {
        int c = mult(rng);
        if (c == 0) continue;
        if (coin(rng)) {
            ScalarVec lam = rand_vec(f, m, rng), mu = rand_vec(f, m, rng);
            if (is_zero_vec(lam) && is_zero_vec(mu)) continue;
            ps.push_back(Pair{lam, mu, c});
            ps.push_back(Pair{mu, lam, c});
            if (is_zero_vec(lam) || is_zero_vec(mu)) continue;
        } else {
            ScalarVec lam = rand_vec(f, m, rng);
            if (is_zero_vec(lam)) continue;
            Scalar k = Scalar::rational(f, Rat(ratio(rng), ratio(rng)));
            ps.push_back(Pair{lam, scale_vec(k, lam), c});
        }
        if (static_cast<int>(ps.size()) >= max_pairs) break;
    }
    return Divisor(f, m, std::move(ps));
}

}  // namespace

TEST_CASE("oracle confirms the hand-derived class of the worked instance") {
    Divisor d = worked_instance();
    DenseWedge got = oracle_class(d);
    // u1 ^ u4 - u2 ^ u3 in the flattened basis (0-based indices here).
    DenseWedge want{{{0, 3}, Rat(1)}, {{1, 2}, Rat(-1)}};
    CHECK(got == want);
}

TEST_CASE("library class_of matches the brute-force oracle") {
    std::mt19937_64 rng(88111);
    std::uniform_int_distribution<int> mult(-3, 3);
    for (const auto& f : {field_rationals(), q_sqrt2()}) {
        for (int iter = 0; iter < 80; ++iter) {
            std::vector<Pair> ps;
            for (int i = 0; i < 3; ++i) {
                int c = mult(rng);
                if (c == 0) c = 1;
                ScalarVec lam = rand_vec(f, 2, rng), mu = rand_vec(f, 2, rng);
                if (is_zero_vec(lam) && is_zero_vec(mu)) lam = unit(f, 2, 0);
                ps.push_back(Pair{lam, mu, c});
            }
            Divisor d(f, 2, std::move(ps));
            CHECK(as_dense(class_of(d)) == oracle_class(d));
        }
    }
    CHECK(class_of(worked_instance()).to_text() == "(1, 4, 1) (2, 3, -1)");
}

TEST_CASE("bucketize expands coordinates, drops zeros, flips below-diagonal") {
    auto q = field_rationals();

    // d[(1,1), (0,1)]: two zero products dropped, one off-diagonal and one
    // diagonal term kept.
    ScalarVec lam{Scalar::one(q), Scalar::one(q)};
    ScalarVec mu{Scalar::zero(q), Scalar::one(q)};
    BucketizedDivisor b = bucketize(Divisor(q, 2, {Pair{lam, mu, 1}}));
    REQUIRE(b.buckets.count({0, 1}) == 1);
    REQUIRE(b.buckets.count({1, 1}) == 1);
    CHECK(b.buckets.size() == 2);
    const TermList& off = b.buckets.at({0, 1});
    REQUIRE(off.terms.size() == 1);
    CHECK(off.terms[0].first == Scalar::one(q));
    CHECK(off.terms[0].second == Scalar::one(q));
    CHECK(b.buckets.at({1, 1}).terms.size() == 1);
    int drops = 0;
    for (const auto& s : b.steps)
        if (s.rule == RewriteStep::Rule::DropZero) ++drops;
    CHECK(drops == 2);

    // d[e2, e1]: the only nonzero product sits below the diagonal and is
    // flipped onto (0, 1) with a negated first scalar.
    BucketizedDivisor b2 = bucketize(Divisor(q, 2, {Pair{unit(q, 2, 1), unit(q, 2, 0), 1}}));
    REQUIRE(b2.buckets.count({0, 1}) == 1);
    const TermList& t2 = b2.buckets.at({0, 1});
    REQUIRE(t2.terms.size() == 1);
    CHECK(t2.terms[0].first == -Scalar::one(q));
    CHECK(t2.terms[0].second == Scalar::one(q));
    bool saw_flip = false;
    for (const auto& s : b2.steps)
        if (s.rule == RewriteStep::Rule::FlipSign) {
            saw_flip = true;
            CHECK(s.axis_p == 0);
            CHECK(s.axis_q == 1);
            CHECK(s.src_p == 1);
            CHECK(s.src_q == 0);
        }
    CHECK(saw_flip);

    // Negative multiplicity folds into |mult| copies with negated alpha.
    BucketizedDivisor b3 =
        bucketize(Divisor(q, 2, {Pair{unit(q, 2, 0), unit(q, 2, 1), -2}}));
    const TermList& t3 = b3.buckets.at({0, 1});
    REQUIRE(t3.terms.size() == 2);
    for (const auto& [a, bb] : t3.terms) {
        CHECK(a == -Scalar::one(q));
        CHECK(bb == Scalar::one(q));
    }
}

TEST_CASE("reduce_terms rewrites a zero-sum list into degenerate pairs") {
    auto q = field_rationals();
    TermList t;
    t.field = q;
    t.m = 2;
    t.axis_p = 0;
    t.axis_q = 1;
    t.terms = {{Scalar::one(q), Scalar::one(q)}, {-Scalar::one(q), Scalar::one(q)}};
    REQUIRE(t.pairing_sum() == Scalar::zero(q));

    auto [pairs, cert] = reduce_terms(t);
    CHECK(pairs.size() <= 3);
    // The rewrite is exact: the produced pairs reproduce the input class.
    DenseWedge in;
    oracle_accumulate(in, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, Rat(1));
    oracle_accumulate(in, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}, Rat(1));
    CHECK(oracle_degenerate_class(q, pairs) == in);
    CHECK(cert.input_class == cert.output_class);
}

TEST_CASE("reduce_terms validates its preconditions") {
    auto q = field_rationals();
    TermList bad;
    bad.field = q;
    bad.m = 2;
    bad.axis_p = 0;
    bad.axis_q = 1;
    bad.terms = {{Scalar::one(q), Scalar::one(q)}};
    CHECK_THROWS_AS(reduce_terms(bad), ConstraintViolated);

    TermList zero_scalar = bad;
    zero_scalar.terms = {{Scalar::zero(q), Scalar::one(q)},
                         {Scalar::one(q), Scalar::zero(q)}};
    CHECK_THROWS_AS(reduce_terms(zero_scalar), std::invalid_argument);

    TermList diag = bad;
    diag.axis_q = 0;
    diag.terms = {{Scalar::one(q), Scalar::one(q)},
                  {-Scalar::one(q), Scalar::one(q)}};
    CHECK_THROWS_AS(reduce_terms(diag), std::invalid_argument);
}

TEST_CASE("reduce_terms stays within the 3(n-1) size bound") {
    auto f = q_sqrt2();
    std::mt19937_64 rng(424242);
    for (int iter = 0; iter < 60; ++iter) {
        TermList t;
        t.field = f;
        t.m = 2;
        t.axis_p = 0;
        t.axis_q = 1;
        const int n = 2 + iter % 6;
        Scalar acc = Scalar::zero(f);
        for (int i = 0; i + 1 < n; ++i) {
            Scalar a = rand_scalar(f, rng), b = rand_scalar(f, rng);
            while (a.is_zero()) a = rand_scalar(f, rng);
            while (b.is_zero()) b = rand_scalar(f, rng);
            t.terms.push_back({a, b});
            acc = acc + a * b;
        }
        // Close the list to pairing sum zero with one balancing term.
        if (acc.is_zero()) {
            t.terms.push_back({Scalar::one(f), Scalar::zero(f)});
            t.terms.back().second = rand_scalar(f, rng);
            while (t.terms.back().second.is_zero())
                t.terms.back().second = rand_scalar(f, rng);
            acc = t.terms.back().first * t.terms.back().second;
        }
        t.terms.push_back({-acc, Scalar::one(f)});
        REQUIRE(t.pairing_sum() == Scalar::zero(f));

        auto [pairs, cert] = reduce_terms(t);
        CHECK(static_cast<int>(pairs.size()) <=
              3 * (static_cast<int>(t.terms.size()) - 1));
        DenseWedge in;
        for (const auto& [a, b] : t.terms) {
            ScalarVec va(2, Scalar::zero(f)), vb(2, Scalar::zero(f));
            va[0] = a;
            vb[1] = b;
            oracle_accumulate(in, oracle_flatten(va, 2), oracle_flatten(vb, 2), Rat(1));
        }
        CHECK(oracle_degenerate_class(f, pairs) == in);
    }
}

TEST_CASE("decompose resolves the worked instance into three pairs") {
    Divisor d = worked_instance();
    auto f = d.field();
    auto [pairs, cert] = decompose(d);
    REQUIRE(pairs.size() == 3);

    Scalar half_t(f, {Rat(0), Rat(1, 2)});  // sqrt2/2 = 1/sqrt2
    auto t = Scalar::theta(f);
    CHECK(pairs[0].gamma == half_t);
    CHECK(pairs[0].nu == ScalarVec{t, Scalar::zero(f)});
    CHECK(pairs[1].gamma == half_t);
    CHECK(pairs[1].nu == ScalarVec{Scalar::zero(f), -t});
    CHECK(pairs[2].gamma == t);
    CHECK(pairs[2].nu == ScalarVec{Scalar::one(f), -Scalar::one(f)});

    // Class agreement against the independent oracle on both sides.
    CHECK(oracle_degenerate_class(f, pairs) == oracle_class(d));
    CHECK(verify_certificate(d, pairs));
    CHECK(cert.input_class == cert.output_class);
    CHECK(cert.input_class.to_text() == "(1, 4, 1) (2, 3, -1)");
}

TEST_CASE("certificate text of the worked instance is pinned") {
    Divisor d = worked_instance();
    auto [pairs, cert] = decompose(d);
    const std::string want =
        "certificate\n"
        "steps 8\n"
        "1 drop-zero axes=(1,1) term=([1, 0], [0, 0])\n"
        "2 drop-zero axes=(2,1) term=([0, 0], [0, 0])\n"
        "3 drop-zero axes=(2,2) term=([0, 0], [0, 1])\n"
        "4 drop-zero axes=(1,1) term=([0, 1], [0, 0])\n"
        "5 drop-zero axes=(2,1) term=([0, 0], [0, 0])\n"
        "6 drop-zero axes=(2,2) term=([0, 0], [-1, 0])\n"
        "7 merge axes=(1,2) terms=([1, 0], [0, 1])+([0, 1], [-1, 0]) "
        "pairs=([0, 1/2] | [0, 1], [0, 0])+([0, 1/2] | [0, 0], [0, -1])+"
        "([0, 1] | [1, 0], [-1, 0]) rest=([1, 0], [0, 0])\n"
        "8 drop-zero axes=(1,2) term=([1, 0], [0, 0])\n"
        "result 3\n"
        "pair 1 ([0, 1/2] | [0, 1], [0, 0])\n"
        "pair 2 ([0, 1/2] | [0, 0], [0, -1])\n"
        "pair 3 ([0, 1] | [1, 0], [-1, 0])\n"
        "input-class (1, 4, 1) (2, 3, -1)\n"
        "output-class (1, 4, 1) (2, 3, -1)\n";
    CHECK(cert.to_text() == want);
    // Deterministic: a second run yields byte-identical text.
    auto [pairs2, cert2] = decompose(d);
    CHECK(cert2.to_text() == cert.to_text());
    CHECK(pairs2.size() == pairs.size());
}

TEST_CASE("decompose handles diagonal and empty inputs") {
    auto q = field_rationals();
    // d[e1, 3 e1] -> single direct pair (1/3, 3 e1).
    Divisor d(q, 2, {Pair{unit(q, 2, 0), scale_vec(Scalar::rational(q, 3), unit(q, 2, 0)), 1}});
    auto [pairs, cert] = decompose(d);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].gamma == Scalar::rational(q, Rat(1, 3)));
    CHECK(pairs[0].nu == ScalarVec{Scalar::rational(q, 3), Scalar::zero(q)});
    CHECK(verify_certificate(d, pairs));

    auto [epairs, ecert] = decompose(Divisor::empty(q, 2));
    CHECK(epairs.empty());
    CHECK(ecert.input_class.is_zero());
    CHECK(ecert.output_class.is_zero());
}

TEST_CASE("decompose rejects asymmetric gram sums naming the entries") {
    auto q = field_rationals();
    Divisor d(q, 2, {Pair{unit(q, 2, 0), unit(q, 2, 1), 1}});
    CHECK_THROWS_WITH_AS(decompose(d),
                         "gram sum is not symmetric: (1,2)=[1] vs (2,1)=[0]",
                         NotSymmetricGram);
}

TEST_CASE("random symmetric-gram divisors decompose to verified certificates") {
    std::mt19937_64 rng(550123);
    for (const auto& f : {field_rationals(), q_sqrt2()}) {
        for (int m : {2, 3, 4}) {
            for (int iter = 0; iter < 12; ++iter) {
                Divisor d = rand_symmetric_divisor(f, m, 8, rng);
                REQUIRE(is_symmetric(gram_sum(d)));
                auto [pairs, cert] = decompose(d);
                CHECK(verify_certificate(d, pairs));
                CHECK(oracle_degenerate_class(f, pairs) == oracle_class(d));
                CHECK(cert.input_class == cert.output_class);

                // The reconstructed degenerate divisor has zero skew matrix.
                if (!pairs.empty()) {
                    std::vector<Pair> dps;
                    for (const auto& p : pairs)
                        dps.push_back(Pair{scale_vec(p.gamma, p.nu), p.nu, 1});
                    Divisor dd(f, m, std::move(dps));
                    CHECK(skew_matrix(dd).entries.is_zero());
                    CHECK(ap_modulus_criterion(dd));
                }

                // Determinism of the full certificate.
                auto [pairs_b, cert_b] = decompose(d);
                CHECK(cert_b.to_text() == cert.to_text());
            }
        }
    }
}

TEST_CASE("degenerate pair and term text forms") {
    auto f = q_sqrt2();
    DegeneratePair p{Scalar::theta(f), {Scalar::one(f), -Scalar::one(f)}};
    CHECK(p.to_text() == "([0, 1] | [1, 0], [-1, 0])");
}
