#pragma once

#include <complex>
#include <string>
#include <vector>

namespace apdiv::numerics {

/// Quadrature and truncation controls shared by the numeric checks.
/// Points of C^m are flattened to R^(2m) as (x_1..x_m, y_1..y_m).
struct QuadratureParams {
    double half_width = 2.0;      // box [center - N, center + N]^(2m)
    int nodes = 24;               // per-axis midpoint node count
    double lattice_radius = 20.0; // truncation |p + iq| <= R
    double epsilon = 0.4;         // support radius of the default bump
    double tolerance = 1e-2;      // pass/fail threshold for checks
    std::vector<double> box_center;  // empty means the origin
};

/// Smooth radial bump of compact support: value C * exp(-1/(1 - r^2/eps^2))
/// for r < eps, zero outside, with C chosen so the integral over R^dim is
/// `mass`.  The normalizing 1-d integral is computed once on construction.
class BumpFunction {
public:
    static BumpFunction make(std::vector<double> center, double radius,
                             double mass = 1.0);

    const std::vector<double>& center() const { return center_; }
    double radius() const { return radius_; }
    double mass() const { return mass_; }
    double norm_const() const { return norm_const_; }
    int dim() const { return static_cast<int>(center_.size()); }

    /// Value from the squared distance to the center.
    double value_r2(double r2) const;

private:
    std::vector<double> center_;
    double radius_ = 0;
    double mass_ = 0;
    double norm_const_ = 0;
};

/// One component of the model zero set: the affine codimension-2 plane
/// {z : w(z) = p + iq} where w(z) = <z, lambda + i mu>, stored by its
/// lattice index (p, q), the minimum-norm base point, and an orthonormal
/// tangent basis (2m - 2 vectors).
struct ZeroSheet {
    int p = 0, q = 0;
    std::vector<double> base;
    std::vector<std::vector<double>> tangent;
};

/// All sheets with |p + iq| <= radius whose plane meets the box (exact
/// zonogon projection test, with a small floating-point margin), sorted by
/// lattice index.  Throws DegenerateFrequencyPair when lambda = mu = 0.
std::vector<ZeroSheet> zero_sheets(const std::vector<double>& lambda,
                                   const std::vector<double>& mu,
                                   const QuadratureParams& params);

/// Weierstrass-style canonical product over the square lattice, truncated
/// to |p + iq| <= radius: w * prod (1 - w/rho) exp(w/rho + (w/rho)^2 / 2).
std::complex<double> eval_lattice_product(std::complex<double> w, double radius);

enum class MeanStrategy {
    Auto,          // PeriodCell when the pair is independent over R
    PeriodCell,    // average over one period parallelogram (exact mean)
    ExpandingCube  // average over the box [-N, N]^m of translations
};

/// Fixed off-axis default center for the built-in test bump.
std::vector<double> default_bump_center(int dim);

/// The pairing of the zero-set current of the pair (lambda, mu) against
/// the bump: (c_j conj(c_k) / (|lambda|^2 + |mu|^2)) * sum over sheets of
/// the surface integral of phi, with c_j = lambda_j + i mu_j.  Component
/// indices j, k are 1-based.  The bump support must lie inside the box
/// (SupportExceedsBox) and the truncation radius must cover every sheet
/// that can touch it.  Sheet integrals use the tensor midpoint rule in
/// sheet-local coordinates.
std::complex<double> pair_current(int j, int k, const std::vector<double>& lambda,
                                  const std::vector<double>& mu,
                                  const BumpFunction& phi,
                                  const QuadratureParams& params);

/// Mean value over translations t of pair_current with phi(. - t).
std::complex<double> mean_value_pairing(int j, int k,
                                        const std::vector<double>& lambda,
                                        const std::vector<double>& mu,
                                        const BumpFunction& phi,
                                        const QuadratureParams& params,
                                        MeanStrategy strategy = MeanStrategy::Auto);

/// Matrix of Im(mean_value_pairing(j, k)) / integral(phi) for a default
/// bump; approximates the exact skew matrix entries mu_j lambda_k -
/// lambda_j mu_k.
std::vector<std::vector<double>> mean_skew_matrix(
    const std::vector<double>& lambda, const std::vector<double>& mu,
    const QuadratureParams& params, MeanStrategy strategy = MeanStrategy::Auto);

struct NumericReport {
    double value = 0;
    double reference = 0;
    double abs_error = 0;
    double rel_error = 0;
    QuadratureParams params;

    std::string to_text() const;
};

/// Base calibration (m = 2): the mean value of the pairing of the
/// square-lattice zero current with a bump equals the bump's integral.
/// value = -Im(mean_value_pairing(1, 2)) for lambda = e1, mu = e2;
/// reference = integral(phi).
NumericReport lebesgue_mean_check(const BumpFunction& phi,
                                  const QuadratureParams& params);

}  // namespace apdiv::numerics
