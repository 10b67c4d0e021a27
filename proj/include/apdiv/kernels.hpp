#pragma once

#include <cstddef>

namespace apdiv::kernels {

/// Innermost quadrature kernel: sum over i of the unnormalized bump
/// profile exp(-1 / (1 - r2 * inv_eps_sq)) at r2 = base_r2 + axis_sq[i].
/// Entries at or beyond the support radius contribute zero, as do entries
/// whose exponent falls below -708 (where exp underflows).
///
/// Two equivalent backends: a scalar reference using std::exp, and an
/// AVX2+FMA variant with a vectorized exponential, selected at runtime by
/// CPU detection.  They agree to ~1e-13 relative error.
double bump_row_sum(double base_r2, const double* axis_sq, std::size_t n,
                    double inv_eps_sq);

double bump_row_sum_scalar(double base_r2, const double* axis_sq, std::size_t n,
                           double inv_eps_sq);

/// Defined on x86-64 builds; throws std::runtime_error elsewhere or when
/// the CPU lacks AVX2.  Guard calls with avx2_available().
double bump_row_sum_avx2(double base_r2, const double* axis_sq, std::size_t n,
                         double inv_eps_sq);

enum class Backend { Scalar, Avx2 };

bool avx2_available();
Backend active_backend();
/// Overrides dispatch (tests); throws std::runtime_error when the
/// requested backend is unavailable.
void force_backend(Backend b);
/// Returns to CPU-detected dispatch.
void reset_backend();

}  // namespace apdiv::kernels
