#include "apdiv/kernels.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#if defined(__x86_64__) || defined(__amd64__)
#define APDIV_X86_64 1
#include <immintrin.h>
#else
#define APDIV_X86_64 0
#endif

namespace apdiv::kernels {

namespace {
// exp underflows to zero below this; both backends cut identically.
constexpr double kExpFloor = -708.0;
}  // namespace

double bump_row_sum_scalar(double base_r2, const double* axis_sq, std::size_t n,
                           double inv_eps_sq) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = 1.0 - (base_r2 + axis_sq[i]) * inv_eps_sq;
        if (t <= 0.0) continue;
        double a = -1.0 / t;
        if (a <= kExpFloor) continue;
        acc += std::exp(a);
    }
    return acc;
}

#if APDIV_X86_64

namespace {

// exp for x in [kExpFloor, 0]: n = round(x/ln2), exp(x) = 2^n * e^r with
// r = x - n*ln2 in [-ln2/2, ln2/2], e^r by a degree-13 Taylor-Horner.
__attribute__((target("avx2,fma"))) inline __m256d exp_nonpos_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

    __m256d nf = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(nf, ln2_hi, x);
    r = _mm256_fnmadd_pd(nf, ln2_lo, r);

    const double inv_fact[14] = {
        1.0,
        1.0,
        1.0 / 2,
        1.0 / 6,
        1.0 / 24,
        1.0 / 120,
        1.0 / 720,
        1.0 / 5040,
        1.0 / 40320,
        1.0 / 362880,
        1.0 / 3628800,
        1.0 / 39916800,
        1.0 / 479001600,
        1.0 / 6227020800.0,
    };
    __m256d p = _mm256_set1_pd(inv_fact[13]);
    for (int k = 12; k >= 0; --k)
        p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(inv_fact[k]));

    // 2^n via the exponent field; x >= -708 keeps n >= -1022 (normal).
    __m128i n32 = _mm256_cvtpd_epi32(nf);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    __m256d scale = _mm256_castsi256_pd(bits);
    return _mm256_mul_pd(p, scale);
}

__attribute__((target("avx2,fma"))) inline double hsum_pd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

__attribute__((target("avx2,fma"))) double bump_row_sum_avx2(double base_r2,
                                                             const double* axis_sq,
                                                             std::size_t n,
                                                             double inv_eps_sq) {
    const __m256d base = _mm256_set1_pd(base_r2);
    const __m256d inv = _mm256_set1_pd(inv_eps_sq);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d minus_one = _mm256_set1_pd(-1.0);
    const __m256d floor_arg = _mm256_set1_pd(kExpFloor);

    __m256d acc = zero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r2 = _mm256_add_pd(base, _mm256_loadu_pd(axis_sq + i));
        __m256d t = _mm256_fnmadd_pd(r2, inv, one);  // 1 - r2/eps^2
        __m256d inside = _mm256_cmp_pd(t, zero, _CMP_GT_OQ);
        // Avoid dividing by values <= 0 on masked lanes.
        __m256d t_safe = _mm256_blendv_pd(one, t, inside);
        __m256d a = _mm256_div_pd(minus_one, t_safe);
        __m256d live = _mm256_and_pd(inside, _mm256_cmp_pd(a, floor_arg, _CMP_GT_OQ));
        __m256d a_safe = _mm256_max_pd(a, floor_arg);
        __m256d e = _mm256_and_pd(exp_nonpos_pd(a_safe), live);
        acc = _mm256_add_pd(acc, e);
    }
    double sum = hsum_pd(acc);
    if (i < n) sum += bump_row_sum_scalar(base_r2, axis_sq + i, n - i, inv_eps_sq);
    return sum;
}

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#else

double bump_row_sum_avx2(double, const double*, std::size_t, double) {
    throw std::runtime_error("AVX2 backend is not built on this architecture");
}

bool avx2_available() { return false; }

#endif  // APDIV_X86_64

namespace {

using RowFn = double (*)(double, const double*, std::size_t, double);

RowFn detect() { return avx2_available() ? &bump_row_sum_avx2 : &bump_row_sum_scalar; }

std::atomic<RowFn> g_row_fn{nullptr};

RowFn current() {
    RowFn fn = g_row_fn.load(std::memory_order_relaxed);
    if (!fn) {
        fn = detect();
        g_row_fn.store(fn, std::memory_order_relaxed);
    }
    return fn;
}

}  // namespace

double bump_row_sum(double base_r2, const double* axis_sq, std::size_t n,
                    double inv_eps_sq) {
    return current()(base_r2, axis_sq, n, inv_eps_sq);
}

Backend active_backend() {
    return current() == &bump_row_sum_avx2 ? Backend::Avx2 : Backend::Scalar;
}

void force_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_available())
        throw std::runtime_error("AVX2 backend unavailable on this CPU");
    g_row_fn.store(b == Backend::Avx2 ? &bump_row_sum_avx2 : &bump_row_sum_scalar,
                   std::memory_order_relaxed);
}

void reset_backend() { g_row_fn.store(detect(), std::memory_order_relaxed); }

}  // namespace apdiv::kernels
