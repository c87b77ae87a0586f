#include "rrdps/math.hpp"

#include <cmath>

namespace rrdps {

double binary_entropy(Probability x) {
    const double p = x.value();
    if (p == 0.0 || p == 1.0) {
        return 0.0;
    }
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace {

// 0! .. 29! are exact in double.
constexpr int kDirectMaxK = 29;

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) {
        f *= static_cast<double>(i);
    }
    return f;
}

}  // namespace

Probability poisson_pmf(int k, double intensity) {
    if (k < 0) {
        throw std::domain_error("poisson_pmf: negative photon number");
    }
    if (!(intensity >= 0.0)) {
        throw std::domain_error("poisson_pmf: negative intensity");
    }
    if (intensity == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    if (k <= kDirectMaxK) {
        return std::exp(-intensity) * std::pow(intensity, k) / factorial(k);
    }
    const double log_p =
        k * std::log(intensity) - intensity - std::lgamma(k + 1.0);
    return std::exp(log_p);
}

int poisson_cutoff(double intensity, double epsilon) {
    if (!(intensity >= 0.0)) {
        throw std::domain_error("poisson_cutoff: negative intensity");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::domain_error("poisson_cutoff: epsilon outside (0, 1)");
    }
    double mass = 0.0;
    for (int k = 0;; ++k) {
        mass += poisson_pmf(k, intensity);
        if (1.0 - mass < epsilon) {
            return k;
        }
    }
}

}  // namespace rrdps
