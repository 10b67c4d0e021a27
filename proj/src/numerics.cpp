#include "apdiv/numerics.hpp"

#include "apdiv/errors.hpp"
#include "apdiv/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace apdiv::numerics {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_params(const QuadratureParams& p) {
    if (!(p.half_width > 0)) throw std::invalid_argument("half_width must be positive");
    if (p.nodes < 2) throw std::invalid_argument("need at least 2 nodes per axis");
    if (!(p.lattice_radius > 0))
        throw std::invalid_argument("lattice_radius must be positive");
    if (!(p.epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
}

struct Frequencies {
    std::vector<double> lambda, mu;
    int m = 0;
    double j_const = 0;            // |lambda|^2 + |mu|^2
    std::vector<double> g1, g2;    // gradients of Re w, Im w in R^(2m)
};

// w(z) = <z, lambda + i mu> on points (x_1..x_m, y_1..y_m):
// Re w = <x, lambda> - <y, mu>, Im w = <x, mu> + <y, lambda>.
// The two gradient rows (lambda, -mu) and (mu, lambda) are orthogonal
// with equal squared norm J = |lambda|^2 + |mu|^2, so the normal Jacobian
// of w is J and dist(z, {w = rho}) = |w(z) - rho| / sqrt(J).
Frequencies make_frequencies(const std::vector<double>& lambda,
                             const std::vector<double>& mu) {
    if (lambda.size() != mu.size() || lambda.empty())
        throw DimensionMismatch("frequency vectors must have equal nonzero length");
    Frequencies fr;
    fr.lambda = lambda;
    fr.mu = mu;
    fr.m = static_cast<int>(lambda.size());
    for (int i = 0; i < fr.m; ++i)
        fr.j_const += lambda[i] * lambda[i] + mu[i] * mu[i];
    if (fr.j_const == 0)
        throw DegenerateFrequencyPair("lambda = mu = 0 spans no zero set");
    fr.g1.resize(2 * fr.m);
    fr.g2.resize(2 * fr.m);
    for (int i = 0; i < fr.m; ++i) {
        fr.g1[i] = lambda[i];
        fr.g1[fr.m + i] = -mu[i];
        fr.g2[i] = mu[i];
        fr.g2[fr.m + i] = lambda[i];
    }
    return fr;
}

std::complex<double> w_at(const Frequencies& fr, const std::vector<double>& pt) {
    double re = 0, im = 0;
    for (int i = 0; i < 2 * fr.m; ++i) {
        re += fr.g1[i] * pt[i];
        im += fr.g2[i] * pt[i];
    }
    return {re, im};
}

std::vector<double> resolve_box_center(const QuadratureParams& p, int dim) {
    if (p.box_center.empty()) return std::vector<double>(dim, 0.0);
    if (static_cast<int>(p.box_center.size()) != dim)
        throw DimensionMismatch("box_center has the wrong dimension");
    return p.box_center;
}

double norm1(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += std::abs(x);
    return s;
}

// Membership of (p, q) in the image of the box under u -> (g1.u, g2.u),
// a zonogon: support-function tests against the generator perpendiculars
// (the facet normals) plus the generator directions (covers the
// degenerate segment case).  A small margin keeps grazing sheets in.
bool sheet_meets_box(const Frequencies& fr, double p, double q,
                     const std::vector<double>& center, double half_width) {
    const int dim = 2 * fr.m;
    double z0p = 0, z0q = 0;
    for (int i = 0; i < dim; ++i) {
        z0p += fr.g1[i] * center[i];
        z0q += fr.g2[i] * center[i];
    }
    const double dp = p - z0p, dq = q - z0q;
    const double margin = 1e-9 * (1.0 + std::abs(dp) + std::abs(dq));
    for (int i = 0; i < dim; ++i) {
        const double gx = fr.g1[i], gy = fr.g2[i];
        const double len = std::hypot(gx, gy);
        if (len < 1e-300) continue;
        const double dirs[2][2] = {{-gy / len, gx / len}, {gx / len, gy / len}};
        for (const auto& eta : dirs) {
            double lhs = std::abs(eta[0] * dp + eta[1] * dq);
            double reach = 0;
            for (int k = 0; k < dim; ++k)
                reach += std::abs(eta[0] * fr.g1[k] + eta[1] * fr.g2[k]);
            reach *= half_width;
            if (lhs > reach + margin) return false;
        }
    }
    return true;
}

std::vector<std::vector<double>> tangent_basis(const Frequencies& fr) {
    const int dim = 2 * fr.m;
    const double inv_sqrt_j = 1.0 / std::sqrt(fr.j_const);
    std::vector<std::vector<double>> ortho;
    std::vector<double> n1(fr.g1), n2(fr.g2);
    for (int i = 0; i < dim; ++i) {
        n1[i] *= inv_sqrt_j;
        n2[i] *= inv_sqrt_j;
    }
    ortho.push_back(n1);
    ortho.push_back(n2);
    std::vector<std::vector<double>> tangent;
    for (int e = 0; e < dim && static_cast<int>(tangent.size()) < dim - 2; ++e) {
        std::vector<double> v(dim, 0.0);
        v[e] = 1.0;
        for (const auto& b : ortho) {
            double proj = 0;
            for (int i = 0; i < dim; ++i) proj += v[i] * b[i];
            for (int i = 0; i < dim; ++i) v[i] -= proj * b[i];
        }
        double len = 0;
        for (double x : v) len += x * x;
        len = std::sqrt(len);
        if (len < 1e-9) continue;
        for (double& x : v) x /= len;
        tangent.push_back(v);
        ortho.push_back(tangent.back());
    }
    return tangent;
}

}  // namespace

std::vector<ZeroSheet> zero_sheets(const std::vector<double>& lambda,
                                   const std::vector<double>& mu,
                                   const QuadratureParams& params) {
    validate_params(params);
    Frequencies fr = make_frequencies(lambda, mu);
    const int dim = 2 * fr.m;
    std::vector<double> center = resolve_box_center(params, dim);
    const double r = params.lattice_radius;
    const int bound = static_cast<int>(std::floor(r));
    auto tang = tangent_basis(fr);

    std::vector<ZeroSheet> out;
    for (int p = -bound; p <= bound; ++p) {
        for (int q = -bound; q <= bound; ++q) {
            if (static_cast<double>(p) * p + static_cast<double>(q) * q > r * r) continue;
            if (!sheet_meets_box(fr, p, q, center, params.half_width)) continue;
            ZeroSheet s;
            s.p = p;
            s.q = q;
            s.base.resize(dim);
            for (int i = 0; i < dim; ++i)
                s.base[i] = (p * fr.g1[i] + q * fr.g2[i]) / fr.j_const;
            s.tangent = tang;
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::complex<double> eval_lattice_product(std::complex<double> w, double radius) {
    if (!(radius >= 5)) throw std::invalid_argument("truncation radius must be >= 5");
    std::complex<double> acc = w;
    const int bound = static_cast<int>(std::floor(radius));
    for (int p = -bound; p <= bound; ++p) {
        for (int q = -bound; q <= bound; ++q) {
            if (p == 0 && q == 0) continue;
            if (static_cast<double>(p) * p + static_cast<double>(q) * q >
                radius * radius)
                continue;
            std::complex<double> rho(p, q);
            std::complex<double> u = w / rho;
            acc *= (1.0 - u) * std::exp(u + 0.5 * u * u);
        }
    }
    return acc;
}

BumpFunction BumpFunction::make(std::vector<double> center, double radius,
                                double mass) {
    if (!(radius > 0)) throw std::invalid_argument("bump radius must be positive");
    if (center.empty()) throw DimensionMismatch("bump center must be nonempty");
    BumpFunction b;
    b.center_ = std::move(center);
    b.radius_ = radius;
    b.mass_ = mass;

    // Raw integral of exp(-1/(1 - r^2/eps^2)) over R^dim: surface area of
    // the unit sphere times the radial integral, the latter by midpoint
    // rule (integrand is smooth and flat at r = eps).
    const int dim = b.dim();
    const double omega = 2.0 * std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0);
    const int n = 50000;
    const double h = radius / n;
    double radial = 0;
    for (int i = 0; i < n; ++i) {
        double r = (i + 0.5) * h;
        double t = 1.0 - (r * r) / (radius * radius);
        if (t <= 0) continue;
        double a = -1.0 / t;
        if (a <= -708.0) continue;
        radial += std::exp(a) * std::pow(r, dim - 1);
    }
    radial *= h;
    b.norm_const_ = mass / (omega * radial);
    return b;
}

double BumpFunction::value_r2(double r2) const {
    double t = 1.0 - r2 / (radius_ * radius_);
    if (t <= 0) return 0.0;
    double a = -1.0 / t;
    if (a <= -708.0) return 0.0;
    return norm_const_ * std::exp(a);
}

std::vector<double> default_bump_center(int dim) {
    static const double pattern[8] = {0.11, -0.07, 0.05, 0.13,
                                      -0.09, 0.03, 0.08, -0.12};
    std::vector<double> out(dim);
    for (int i = 0; i < dim; ++i) out[i] = pattern[i % 8];
    return out;
}

namespace {

// Tensor midpoint rule over the sheet-local tangent coordinates.  The
// tangent frame is orthonormal and orthogonal to the offset from the
// nearest point, so |z - center|^2 = delta^2 + |xi|^2 and the integrand
// reduces to the radial profile; the innermost axis is the SIMD kernel.
struct SheetQuadrature {
    std::vector<double> axis_sq;
    double cell_weight = 1;
    double eps2 = 0;
    double inv_eps2 = 0;
    int axes = 0;
    int nodes = 0;

    SheetQuadrature(int dim, double eps, int nodes_in) {
        axes = dim - 2;
        nodes = nodes_in;
        eps2 = eps * eps;
        inv_eps2 = 1.0 / eps2;
        const double h = 2.0 * eps / nodes;
        axis_sq.resize(nodes);
        for (int i = 0; i < nodes; ++i) {
            double xi = -eps + (i + 0.5) * h;
            axis_sq[i] = xi * xi;
        }
        cell_weight = std::pow(h, axes);
    }

    // Unnormalized profile sum over the grid at squared offset delta2.
    double raw_sum(double delta2) const {
        if (delta2 >= eps2) return 0.0;
        if (axes == 0) {
            double t = 1.0 - delta2 * inv_eps2;
            double a = -1.0 / t;
            return a > -708.0 ? std::exp(a) : 0.0;
        }
        double total = 0;
        std::function<void(int, double)> rec = [&](int axis, double base) {
            if (base >= eps2) return;
            if (axis == axes - 1) {
                total += kernels::bump_row_sum(base, axis_sq.data(), axis_sq.size(),
                                               inv_eps2);
                return;
            }
            for (int i = 0; i < nodes; ++i) rec(axis + 1, base + axis_sq[i]);
        };
        rec(0, delta2);
        return total;
    }
};

// Sum over nearby sheets of the surface integral of phi when the bump sits
// at w-image w0.
double sheet_mass_sum(const Frequencies& fr, const BumpFunction& phi,
                      const SheetQuadrature& quad, std::complex<double> w0) {
    const double reach = phi.radius() * std::sqrt(fr.j_const);
    const int pmin = static_cast<int>(std::ceil(w0.real() - reach));
    const int pmax = static_cast<int>(std::floor(w0.real() + reach));
    const int qmin = static_cast<int>(std::ceil(w0.imag() - reach));
    const int qmax = static_cast<int>(std::floor(w0.imag() + reach));
    double acc = 0;
    for (int p = pmin; p <= pmax; ++p) {
        for (int q = qmin; q <= qmax; ++q) {
            const double dr = w0.real() - p, di = w0.imag() - q;
            const double delta2 = (dr * dr + di * di) / fr.j_const;
            acc += quad.raw_sum(delta2);
        }
    }
    return acc * phi.norm_const() * quad.cell_weight;
}

void check_support_in_box(const BumpFunction& phi, const QuadratureParams& params,
                          const std::vector<double>& box_center) {
    for (int i = 0; i < phi.dim(); ++i) {
        if (std::abs(phi.center()[i] - box_center[i]) + phi.radius() >
            params.half_width + 1e-12)
            throw SupportExceedsBox("bump support leaves the box");
    }
}

void check_radius_covers(double needed, const QuadratureParams& params) {
    if (needed > params.lattice_radius)
        throw std::invalid_argument(
            "lattice_radius too small for the requested pairing (need >= " +
            std::to_string(needed) + ")");
}

std::complex<double> prefactor(const Frequencies& fr, int j, int k) {
    if (j < 1 || k < 1 || j > fr.m || k > fr.m)
        throw DimensionMismatch("component index out of range");
    std::complex<double> cj(fr.lambda[j - 1], fr.mu[j - 1]);
    std::complex<double> ck(fr.lambda[k - 1], fr.mu[k - 1]);
    return cj * std::conj(ck);
}

bool r_independent_numeric(const Frequencies& fr) {
    double ll = 0, mm = 0, lm = 0;
    for (int i = 0; i < fr.m; ++i) {
        ll += fr.lambda[i] * fr.lambda[i];
        mm += fr.mu[i] * fr.mu[i];
        lm += fr.lambda[i] * fr.mu[i];
    }
    double det = ll * mm - lm * lm;
    return det > 1e-9 * std::max(1.0, ll * mm);
}

// Average of sheet_mass_sum over the translation set, divided by J.
double mean_normalized_mass(const Frequencies& fr, const BumpFunction& phi,
                            const QuadratureParams& params, MeanStrategy strategy) {
    validate_params(params);
    if (phi.dim() != 2 * fr.m)
        throw DimensionMismatch("bump dimension must be 2m");
    check_support_in_box(phi, params, resolve_box_center(params, 2 * fr.m));

    std::vector<double> c = phi.center();
    const std::complex<double> w0 = w_at(fr, c);
    SheetQuadrature quad(2 * fr.m, phi.radius(), params.nodes);

    if (strategy == MeanStrategy::Auto)
        strategy = r_independent_numeric(fr) ? MeanStrategy::PeriodCell
                                             : MeanStrategy::ExpandingCube;

    const double eps_reach = phi.radius() * std::sqrt(fr.j_const);
    const int n = params.nodes;

    if (strategy == MeanStrategy::PeriodCell) {
        if (!r_independent_numeric(fr))
            throw RDependentPair("period-cell averaging needs an R-independent pair");
        // Translating by u P1 + v P2 shifts w by exactly u + iv; averaging
        // over the unit cell in (u, v) averages over one period.
        check_radius_covers(std::abs(w0) + std::sqrt(2.0) + eps_reach, params);
        double acc = 0;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                std::complex<double> shift((a + 0.5) / n, (b + 0.5) / n);
                acc += sheet_mass_sum(fr, phi, quad, w0 + shift);
            }
        }
        return acc / (static_cast<double>(n) * n) / fr.j_const;
    }

    // Expanding cube: average over real translations t in [-N, N]^m; the
    // shift of w is <t, lambda> + i <t, mu>.
    const double span =
        params.half_width * (norm1(fr.lambda) + norm1(fr.mu));
    check_radius_covers(std::abs(w0) + span + eps_reach, params);
    const double h = 2.0 * params.half_width / n;
    std::vector<int> idx(fr.m, 0);
    double acc = 0;
    for (;;) {
        std::complex<double> shift(0, 0);
        for (int i = 0; i < fr.m; ++i) {
            double t = -params.half_width + (idx[i] + 0.5) * h;
            shift += std::complex<double>(t * fr.lambda[i], t * fr.mu[i]);
        }
        acc += sheet_mass_sum(fr, phi, quad, w0 + shift);
        int axis = 0;
        while (axis < fr.m && ++idx[axis] == n) {
            idx[axis] = 0;
            ++axis;
        }
        if (axis == fr.m) break;
    }
    return acc / std::pow(static_cast<double>(n), fr.m) / fr.j_const;
}

}  // namespace

std::complex<double> pair_current(int j, int k, const std::vector<double>& lambda,
                                  const std::vector<double>& mu,
                                  const BumpFunction& phi,
                                  const QuadratureParams& params) {
    validate_params(params);
    Frequencies fr = make_frequencies(lambda, mu);
    if (phi.dim() != 2 * fr.m)
        throw DimensionMismatch("bump dimension must be 2m");
    check_support_in_box(phi, params, resolve_box_center(params, 2 * fr.m));
    const std::complex<double> w0 = w_at(fr, phi.center());
    const double eps_reach = phi.radius() * std::sqrt(fr.j_const);
    check_radius_covers(std::abs(w0) + eps_reach, params);
    SheetQuadrature quad(2 * fr.m, phi.radius(), params.nodes);
    double mass = sheet_mass_sum(fr, phi, quad, w0);
    return prefactor(fr, j, k) * (mass / fr.j_const);
}

std::complex<double> mean_value_pairing(int j, int k,
                                        const std::vector<double>& lambda,
                                        const std::vector<double>& mu,
                                        const BumpFunction& phi,
                                        const QuadratureParams& params,
                                        MeanStrategy strategy) {
    Frequencies fr = make_frequencies(lambda, mu);
    double avg = mean_normalized_mass(fr, phi, params, strategy);
    return prefactor(fr, j, k) * avg;
}

std::vector<std::vector<double>> mean_skew_matrix(const std::vector<double>& lambda,
                                                  const std::vector<double>& mu,
                                                  const QuadratureParams& params,
                                                  MeanStrategy strategy) {
    Frequencies fr = make_frequencies(lambda, mu);
    BumpFunction phi =
        BumpFunction::make(default_bump_center(2 * fr.m), params.epsilon, 1.0);
    const double avg = mean_normalized_mass(fr, phi, params, strategy);
    std::vector<std::vector<double>> out(fr.m, std::vector<double>(fr.m, 0.0));
    for (int j = 0; j < fr.m; ++j)
        for (int k = 0; k < fr.m; ++k)
            out[j][k] = prefactor(fr, j + 1, k + 1).imag() * avg / phi.mass();
    return out;
}

std::string NumericReport::to_text() const {
    char buf[512];
    std::ostringstream os;
    auto put = [&](const char* name, double v) {
        std::snprintf(buf, sizeof buf, "%s %.17g\n", name, v);
        os << buf;
    };
    put("value", value);
    put("reference", reference);
    put("abs_error", abs_error);
    put("rel_error", rel_error);
    std::snprintf(buf, sizeof buf,
                  "params half_width=%.17g nodes=%d lattice_radius=%.17g "
                  "epsilon=%.17g tolerance=%.17g\n",
                  params.half_width, params.nodes, params.lattice_radius,
                  params.epsilon, params.tolerance);
    os << buf;
    return os.str();
}

NumericReport lebesgue_mean_check(const BumpFunction& phi,
                                  const QuadratureParams& params) {
    if (phi.dim() != 4)
        throw DimensionMismatch("the calibration check runs in m = 2");
    std::vector<double> lambda{1.0, 0.0}, mu{0.0, 1.0};
    std::complex<double> mean =
        mean_value_pairing(1, 2, lambda, mu, phi, params, MeanStrategy::PeriodCell);
    NumericReport rep;
    rep.value = -mean.imag();
    rep.reference = phi.mass();
    rep.abs_error = std::abs(rep.value - rep.reference);
    rep.rel_error = rep.abs_error / std::abs(rep.reference);
    rep.params = params;
    return rep;
}

}  // namespace apdiv::numerics
