#include "apdiv/wedge.hpp"

#include "apdiv/errors.hpp"

#include <sstream>

namespace apdiv {

QVector embed(const std::vector<Scalar>& v, const FieldPtr& field) {
    const int deg = field->degree();
    QVector out;
    out.m = static_cast<int>(v.size());
    out.deg = deg;
    out.coords.reserve(v.size() * static_cast<std::size_t>(deg));
    for (const auto& s : v) {
        if (!(*s.field() == *field))
            throw MixedFields("embed: component from a different field");
        for (const auto& c : s.coeffs()) out.coords.push_back(c);
    }
    return out;
}

void Wedge2::add_term(int i, int j, Rat c) {
    if (i == j || c == 0) return;
    if (i > j) {
        std::swap(i, j);
        c = -c;
    }
    auto key = std::make_pair(i, j);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, std::move(c));
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Wedge2 Wedge2::operator+(const Wedge2& o) const {
    Wedge2 out = *this;
    for (const auto& [key, c] : o.terms_) out.add_term(key.first, key.second, c);
    return out;
}

Wedge2 Wedge2::scaled(const Rat& k) const {
    Wedge2 out;
    if (k == 0) return out;
    for (const auto& [key, c] : terms_) out.terms_.emplace(key, c * k);
    return out;
}

std::string Wedge2::to_text() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) os << " ";
        first = false;
        os << "(" << key.first + 1 << ", " << key.second + 1 << ", "
           << rat_to_string(c) << ")";
    }
    return os.str();
}

Wedge2 add_wedge(const Wedge2& a, const Wedge2& b) { return a + b; }

Wedge2 scale_wedge(const Int& n, const Wedge2& a) { return a.scaled(Rat(n)); }

Wedge2 wedge(const QVector& u, const QVector& v) {
    if (u.dim() != v.dim())
        throw DimensionMismatch("wedge: vectors of different dimension");
    Wedge2 out;
    const int n = u.dim();
    for (int i = 0; i < n; ++i) {
        if (u.coords[i] == 0 && v.coords[i] == 0) continue;
        for (int j = i + 1; j < n; ++j) {
            Rat c = u.coords[i] * v.coords[j] - u.coords[j] * v.coords[i];
            out.add_term(i, j, std::move(c));
        }
    }
    return out;
}

}  // namespace apdiv
