#include "rrdps/kernels.hpp"

#include <cmath>

namespace rrdps::kernels::detail {

void exp_v_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp(x[i]);
    }
}

void gain_v_scalar(const double* intensity, std::size_t n, double dark,
                   double eta, double* out) {
    const double survive = 1.0 - dark;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = 1.0 - survive * std::exp(-intensity[i] * eta);
    }
}

double gain_mean_scalar(const double* intensity, std::size_t n, double dark,
                        double eta) {
    const double survive = 1.0 - dark;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += 1.0 - survive * std::exp(-intensity[i] * eta);
    }
    return sum / static_cast<double>(n);
}

void poisson_mean_v_scalar(const double* intensity, std::size_t n, int k_max,
                           double* means) {
    for (int k = 0; k <= k_max; ++k) {
        means[k] = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double x = intensity[i];
        double p = std::exp(-x);  // pmf(0, x)
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
