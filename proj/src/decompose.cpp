#include "apdiv/decompose.hpp"

#include "apdiv/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace apdiv {

namespace {

std::string term_text(const std::pair<Scalar, Scalar>& t) {
    return "(" + to_literal(t.first) + ", " + to_literal(t.second) + ")";
}

ScalarVec axis_vector(const FieldPtr& field, int m, int axis, const Scalar& value) {
    ScalarVec v(static_cast<std::size_t>(m), Scalar::zero(field));
    v[static_cast<std::size_t>(axis)] = value;
    return v;
}

}  // namespace

std::string DegeneratePair::to_text() const {
    std::string out = "(" + to_literal(gamma) + " |";
    for (std::size_t i = 0; i < nu.size(); ++i) {
        out += i ? ", " : " ";
        out += to_literal(nu[i]);
    }
    return out + ")";
}

Scalar TermList::pairing_sum() const {
    Scalar acc = Scalar::zero(field);
    for (const auto& [a, b] : terms) acc = acc + a * b;
    return acc;
}

BucketizedDivisor bucketize(const Divisor& d) {
    BucketizedDivisor out;
    const FieldPtr& f = d.field();
    const int m = d.m();

    auto bucket_of = [&](int p, int q) -> TermList& {
        auto key = std::make_pair(p, q);
        auto it = out.buckets.find(key);
        if (it == out.buckets.end()) {
            TermList t;
            t.field = f;
            t.m = m;
            t.axis_p = p;
            t.axis_q = q;
            it = out.buckets.emplace(key, std::move(t)).first;
        }
        return it->second;
    };

    for (const auto& pr : d.pairs()) {
        const long long copies = pr.mult > 0 ? pr.mult : -pr.mult;
        const bool negate = pr.mult < 0;
        for (int p = 0; p < m; ++p) {
            for (int q = 0; q < m; ++q) {
                Scalar alpha = negate ? -pr.lambda[p] : pr.lambda[p];
                const Scalar& beta = pr.mu[q];
                for (long long c = 0; c < copies; ++c) {
                    if (alpha.is_zero() || beta.is_zero()) {
                        RewriteStep s;
                        s.rule = RewriteStep::Rule::DropZero;
                        s.axis_p = p;
                        s.axis_q = q;
                        s.consumed.push_back({alpha, beta});
                        out.steps.push_back(std::move(s));
                        continue;
                    }
                    if (p <= q) {
                        bucket_of(p, q).terms.push_back({alpha, beta});
                    } else {
                        // W(a e^p, b e^q) = W(-b e^q, a e^p) for p > q.
                        RewriteStep s;
                        s.rule = RewriteStep::Rule::FlipSign;
                        s.axis_p = q;
                        s.axis_q = p;
                        s.src_p = p;
                        s.src_q = q;
                        s.consumed.push_back({alpha, beta});
                        s.produced.push_back({-beta, alpha});
                        out.steps.push_back(std::move(s));
                        bucket_of(q, p).terms.push_back({-beta, alpha});
                    }
                }
            }
        }
    }
    return out;
}

namespace {

// Merges the last two terms of a live term list, emitting three degenerate
// pairs and one replacement term; appends the steps taken.
void reduce_into(TermList work, std::vector<DegeneratePair>& pairs,
                 std::vector<RewriteStep>& steps) {
    const FieldPtr& f = work.field;
    const int m = work.m;
    const int p = work.axis_p, q = work.axis_q;
    const Scalar expected_sum = work.pairing_sum();

    while (work.terms.size() >= 2) {
        auto [a, b] = work.terms[work.terms.size() - 2];
        auto [c, d] = work.terms[work.terms.size() - 1];
        work.terms.pop_back();
        work.terms.pop_back();

        Scalar a_over_c = a / c;
        Scalar c_over_a = c / a;
        Scalar dc_over_a = d * c_over_a;

        DegeneratePair d1{a_over_c, axis_vector(f, m, p, c)};
        DegeneratePair d2{a_over_c, axis_vector(f, m, q, dc_over_a)};
        ScalarVec nu3 = axis_vector(f, m, p, a);
        nu3[static_cast<std::size_t>(q)] = d;
        DegeneratePair d3{c_over_a, std::move(nu3)};

        std::pair<Scalar, Scalar> rest{a, b + dc_over_a};

        RewriteStep s;
        s.rule = RewriteStep::Rule::Merge;
        s.axis_p = p;
        s.axis_q = q;
        s.consumed = {{a, b}, {c, d}};
        s.emitted = {d1, d2, d3};
        s.produced = {rest};
        steps.push_back(std::move(s));

        pairs.push_back(std::move(d1));
        pairs.push_back(std::move(d2));
        pairs.push_back(std::move(d3));

        if (rest.second.is_zero()) {
            RewriteStep drop;
            drop.rule = RewriteStep::Rule::DropZero;
            drop.axis_p = p;
            drop.axis_q = q;
            drop.consumed = {rest};
            steps.push_back(std::move(drop));
        } else {
            work.terms.push_back(std::move(rest));
        }

        if (!(work.pairing_sum() == expected_sum))
            throw std::logic_error("merge failed to conserve the pairing sum");
    }

    if (!work.terms.empty())
        throw std::logic_error("a single nonzero term survived a zero-sum reduction");
}

std::string gram_asymmetry_message(const GramMatrix& g) {
    std::ostringstream os;
    os << "gram sum is not symmetric:";
    for (int j = 0; j < g.size(); ++j)
        for (int k = j + 1; k < g.size(); ++k)
            if (!(g.at(j, k) == g.at(k, j)))
                os << " (" << j + 1 << "," << k + 1 << ")=" << to_literal(g.at(j, k))
                   << " vs (" << k + 1 << "," << j + 1 << ")=" << to_literal(g.at(k, j));
    return os.str();
}

}  // namespace

std::pair<std::vector<DegeneratePair>, Certificate> reduce_terms(const TermList& t) {
    for (const auto& [a, b] : t.terms)
        if (a.is_zero() || b.is_zero())
            throw std::invalid_argument("term list contains a zero scalar");
    if (t.axis_p == t.axis_q)
        throw std::invalid_argument("reduce_terms needs an off-diagonal axis pair");
    if (!t.pairing_sum().is_zero())
        throw ConstraintViolated("pairing sum of the term list is nonzero");

    std::vector<DegeneratePair> pairs;
    Certificate cert;
    reduce_into(t, pairs, cert.steps);
    cert.result = pairs;
    for (const auto& [a, b] : t.terms) {
        Wedge2 w = wedge(embed(axis_vector(t.field, t.m, t.axis_p, a), t.field),
                         embed(axis_vector(t.field, t.m, t.axis_q, b), t.field));
        cert.input_class = cert.input_class + w;
    }
    cert.output_class = degenerate_class_sum(t.field, pairs);
    if (!(cert.input_class == cert.output_class))
        throw std::logic_error("reduction changed the wedge class");
    return {std::move(pairs), std::move(cert)};
}

std::pair<std::vector<DegeneratePair>, Certificate> decompose(const Divisor& d) {
    GramMatrix g = gram_sum(d);
    if (!is_symmetric(g)) throw NotSymmetricGram(gram_asymmetry_message(g));

    BucketizedDivisor bz = bucketize(d);
    Certificate cert;
    cert.steps = std::move(bz.steps);
    std::vector<DegeneratePair> pairs;

    for (auto& [key, bucket] : bz.buckets) {
        if (key.first == key.second) {
            const int p = key.first;
            for (const auto& [alpha, beta] : bucket.terms) {
                DegeneratePair dp{alpha / beta, axis_vector(d.field(), d.m(), p, beta)};
                RewriteStep s;
                s.rule = RewriteStep::Rule::DiagonalDirect;
                s.axis_p = p;
                s.axis_q = p;
                s.consumed = {{alpha, beta}};
                s.emitted = {dp};
                cert.steps.push_back(std::move(s));
                pairs.push_back(std::move(dp));
            }
        } else {
            if (!bucket.pairing_sum().is_zero())
                throw std::logic_error("bucket pairing sum nonzero despite symmetric gram");
            reduce_into(bucket, pairs, cert.steps);
        }
    }

    cert.result = pairs;
    cert.input_class = class_of(d);
    cert.output_class = degenerate_class_sum(d.field(), pairs);
    if (!(cert.input_class == cert.output_class))
        throw std::logic_error("decomposition changed the wedge class");
    return {std::move(pairs), std::move(cert)};
}

Wedge2 degenerate_class_sum(const FieldPtr& field,
                            const std::vector<DegeneratePair>& pairs) {
    Wedge2 acc;
    for (const auto& dp : pairs) {
        ScalarVec scaled = scale_vec(dp.gamma, dp.nu);
        acc = acc + wedge(embed(scaled, field), embed(dp.nu, field));
    }
    return acc;
}

bool verify_certificate(const Divisor& d, const std::vector<DegeneratePair>& pairs) {
    return class_of(d) == degenerate_class_sum(d.field(), pairs);
}

namespace {

const char* rule_name(RewriteStep::Rule r) {
    switch (r) {
        case RewriteStep::Rule::DropZero: return "drop-zero";
        case RewriteStep::Rule::FlipSign: return "flip-sign";
        case RewriteStep::Rule::DiagonalDirect: return "diagonal-direct";
        case RewriteStep::Rule::Merge: return "merge";
    }
    return "?";
}

}  // namespace

std::string Certificate::to_text() const {
    std::ostringstream os;
    os << "certificate\n";
    os << "steps " << steps.size() << "\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const RewriteStep& s = steps[i];
        os << i + 1 << " " << rule_name(s.rule) << " axes=(" << s.axis_p + 1 << ","
           << s.axis_q + 1 << ")";
        if (s.rule == RewriteStep::Rule::FlipSign)
            os << " from=(" << s.src_p + 1 << "," << s.src_q + 1 << ")";
        if (!s.consumed.empty()) {
            os << (s.consumed.size() == 1 ? " term=" : " terms=");
            for (std::size_t k = 0; k < s.consumed.size(); ++k) {
                if (k) os << "+";
                os << term_text(s.consumed[k]);
            }
        }
        if (!s.emitted.empty()) {
            os << (s.emitted.size() == 1 ? " pair=" : " pairs=");
            for (std::size_t k = 0; k < s.emitted.size(); ++k) {
                if (k) os << "+";
                os << s.emitted[k].to_text();
            }
        }
        if (!s.produced.empty()) {
            os << (s.rule == RewriteStep::Rule::Merge ? " rest=" : " out=");
            for (std::size_t k = 0; k < s.produced.size(); ++k) {
                if (k) os << "+";
                os << term_text(s.produced[k]);
            }
        }
        os << "\n";
    }
    os << "result " << result.size() << "\n";
    for (std::size_t i = 0; i < result.size(); ++i)
        os << "pair " << i + 1 << " " << result[i].to_text() << "\n";
    os << "input-class " << input_class.to_text() << "\n";
    os << "output-class " << output_class.to_text() << "\n";
    return os.str();
}

}  // namespace apdiv
