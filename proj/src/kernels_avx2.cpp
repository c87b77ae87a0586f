// AVX2+FMA variants of the batched kernels. Compiled with -mavx2 -mfma and
// reached only through the runtime dispatcher, so the rest of the binary
// stays runnable on plain x86-64.

#if defined(RRDPS_HAVE_AVX2)

#include "rrdps/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace rrdps::kernels::detail {

namespace {

// exp(x) for |x| <= 708: split x = n*ln2 + r with |r| <= ln2/2, evaluate the
// degree-13 Taylor polynomial of exp(r), then scale by 2^n through the
// exponent field. Truncation error of the polynomial is ~4e-18 relative on
// this r range, so total error is dominated by rounding (a few ulp).
const __m256d kLog2E = _mm256_set1_pd(1.4426950408889634074);
const __m256d kLn2Hi = _mm256_set1_pd(0.693145751953125);
const __m256d kLn2Lo = _mm256_set1_pd(1.42860682030941723212e-6);
const __m256d kOne = _mm256_set1_pd(1.0);

inline __m256d pow2n(__m256d n) {
    // n integral, |n| <= 1023: build 2^n by sliding n into the exponent.
    const __m256d magic = _mm256_set1_pd(4503599627370496.0 + 1023.0);
    __m256d biased = _mm256_add_pd(n, magic);
    __m256i bits = _mm256_castpd_si256(biased);
    bits = _mm256_slli_epi64(bits, 52);
    return _mm256_castsi256_pd(bits);
}

inline __m256d exp_lanes(__m256d x) {
    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, kLog2E),
                                      _MM_FROUND_TO_NEAREST_INT);
    __m256d r = _mm256_fnmadd_pd(n, kLn2Hi, x);
    r = _mm256_fnmadd_pd(n, kLn2Lo, r);

    // Horner over 1/13! .. 1/2!, then 1 + r + r^2 * poly.
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    const __m256d r2 = _mm256_mul_pd(r, r);
    __m256d z = _mm256_fmadd_pd(p, r2, r);
    z = _mm256_add_pd(z, kOne);
    return _mm256_mul_pd(z, pow2n(n));
}

inline bool lanes_in_range(__m256d x) {
    const __m256d limit = _mm256_set1_pd(708.0);
    const __m256d mask = _mm256_set1_pd(-0.0);
    const __m256d ax = _mm256_andnot_pd(mask, x);
    // also rejects NaN (comparison is false)
    const __m256d ok = _mm256_cmp_pd(ax, limit, _CMP_LE_OQ);
    return _mm256_movemask_pd(ok) == 0xF;
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

constexpr int kMaxAccum = 64;

}  // namespace

void exp_v_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        if (lanes_in_range(xv)) {
            _mm256_storeu_pd(out + i, exp_lanes(xv));
        } else {
            for (int l = 0; l < 4; ++l) {
                out[i + l] = std::exp(x[i + l]);
            }
        }
    }
    exp_v_scalar(x + i, out + i, n - i);
}

void gain_v_avx2(const double* intensity, std::size_t n, double dark,
                 double eta, double* out) {
    const __m256d survive = _mm256_set1_pd(1.0 - dark);
    const __m256d neg_eta = _mm256_set1_pd(-eta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(intensity + i);
        const __m256d t = exp_lanes(_mm256_mul_pd(xv, neg_eta));
        _mm256_storeu_pd(out + i, _mm256_fnmadd_pd(survive, t, kOne));
    }
    gain_v_scalar(intensity + i, n - i, dark, eta, out + i);
}

double gain_mean_avx2(const double* intensity, std::size_t n, double dark,
                      double eta) {
    const __m256d survive = _mm256_set1_pd(1.0 - dark);
    const __m256d neg_eta = _mm256_set1_pd(-eta);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(intensity + i);
        const __m256d t = exp_lanes(_mm256_mul_pd(xv, neg_eta));
        acc = _mm256_add_pd(acc, _mm256_fnmadd_pd(survive, t, kOne));
    }
    double sum = hsum(acc);
    const double keep = 1.0 - dark;
    for (; i < n; ++i) {
        sum += 1.0 - keep * std::exp(-intensity[i] * eta);
    }
    return sum / static_cast<double>(n);
}

void poisson_mean_v_avx2(const double* intensity, std::size_t n, int k_max,
                         double* means) {
    if (k_max + 1 > kMaxAccum) {
        poisson_mean_v_scalar(intensity, n, k_max, means);
        return;
    }
    __m256d acc[kMaxAccum];
    for (int k = 0; k <= k_max; ++k) {
        acc[k] = _mm256_setzero_pd();
    }
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(intensity + i);
        __m256d p = exp_lanes(_mm256_xor_pd(xv, sign));  // pmf(0, x)
        acc[0] = _mm256_add_pd(acc[0], p);
        for (int k = 1; k <= k_max; ++k) {
            const __m256d ratio =
                _mm256_div_pd(xv, _mm256_set1_pd(static_cast<double>(k)));
            p = _mm256_mul_pd(p, ratio);
            acc[k] = _mm256_add_pd(acc[k], p);
        }
    }
    for (int k = 0; k <= k_max; ++k) {
        means[k] = hsum(acc[k]);
    }
    for (; i < n; ++i) {
        const double x = intensity[i];
        double p = std::exp(-x);
        means[0] += p;
        for (int k = 1; k <= k_max; ++k) {
            p *= x / static_cast<double>(k);
            means[k] += p;
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int k = 0; k <= k_max; ++k) {
        means[k] *= inv_n;
    }
}

}  // namespace rrdps::kernels::detail

#endif  // RRDPS_HAVE_AVX2
