#pragma once

#include "apdiv/field.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace apdiv {

/// Vector in Q^(m*deg): the coordinates of an element of Q(theta)^m
/// flattened over the power basis, block j holding the theta-coefficients
/// of component j.
struct QVector {
    std::vector<Rat> coords;
    int m = 0;
    int deg = 0;

    int dim() const { return static_cast<int>(coords.size()); }
};

QVector embed(const std::vector<Scalar>& v, const FieldPtr& field);

/// Element of the second exterior power of Q^n, stored sparsely as
/// coefficients on basis vectors u_i ^ u_j with i < j (0-based indices,
/// serialized 1-based).  Zero coefficients are never stored.
class Wedge2 {
public:
    Wedge2() = default;

    static Wedge2 zero() { return Wedge2(); }

    /// Adds c * (u_i ^ u_j); indices are canonicalized and may come in
    /// either order (equal indices contribute nothing).
    void add_term(int i, int j, Rat c);

    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<int, int>, Rat>& terms() const { return terms_; }

    Wedge2 operator+(const Wedge2& o) const;
    Wedge2 scaled(const Rat& k) const;
    bool operator==(const Wedge2& o) const { return terms_ == o.terms_; }

    /// "(i, j, p/q) (i, j, p/q) ..." in lexicographic index order, 1-based;
    /// "0" when zero.
    std::string to_text() const;

private:
    std::map<std::pair<int, int>, Rat> terms_;
};

Wedge2 add_wedge(const Wedge2& a, const Wedge2& b);
Wedge2 scale_wedge(const Int& n, const Wedge2& a);

/// u ^ v.  Zero exactly when u and v are linearly dependent over Q.
Wedge2 wedge(const QVector& u, const QVector& v);

}  // namespace apdiv
