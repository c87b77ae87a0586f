#pragma once

#include <cstddef>

namespace rrdps::kernels {

// Batched arithmetic used by the hot loops (error-pattern tallies, series
// consistency grids). Each kernel has a scalar reference implementation and
// an AVX2 variant; the variants are equivalence-tested against each other
// and the backend is picked once at startup from the CPU, overridable via
// the RRDPS_KERNELS environment variable ("scalar" or "avx2").

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);

/// Backend chosen from CPU detection plus RRDPS_KERNELS override.
Backend preferred_backend();

Backend active_backend();
void set_backend(Backend b);

/// out[i] = exp(x[i])
void exp_v(const double* x, double* out, std::size_t n);

/// out[i] = 1 - (1 - dark) * exp(-intensity[i] * eta)
void gain_v(const double* intensity, std::size_t n, double dark, double eta,
            double* out);

/// Mean of gain_v over the batch.
double gain_mean(const double* intensity, std::size_t n, double dark,
                 double eta);

/// means[k] = (1/n) * sum_i pmf(k, intensity[i]) for k = 0..k_max, via the
/// recurrence pmf(k+1) = pmf(k) * x / (k+1). means must hold k_max+1 values.
void poisson_mean_v(const double* intensity, std::size_t n, int k_max,
                    double* means);

namespace detail {

void exp_v_scalar(const double* x, double* out, std::size_t n);
void gain_v_scalar(const double* intensity, std::size_t n, double dark,
                   double eta, double* out);
double gain_mean_scalar(const double* intensity, std::size_t n, double dark,
                        double eta);
void poisson_mean_v_scalar(const double* intensity, std::size_t n, int k_max,
                           double* means);

#if defined(RRDPS_HAVE_AVX2)
void exp_v_avx2(const double* x, double* out, std::size_t n);
void gain_v_avx2(const double* intensity, std::size_t n, double dark,
                 double eta, double* out);
double gain_mean_avx2(const double* intensity, std::size_t n, double dark,
                      double eta);
void poisson_mean_v_avx2(const double* intensity, std::size_t n, int k_max,
                         double* means);
#endif

}  // namespace detail

}  // namespace rrdps::kernels
