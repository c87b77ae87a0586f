#include <doctest.h>

#include <cmath>
#include <vector>

#include "rrdps/kernels.hpp"
#include "rrdps/math.hpp"
#include "rrdps/rng.hpp"

using namespace rrdps;
namespace k = rrdps::kernels;

namespace {

double rel_err(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

struct BackendGuard {
    k::Backend saved = k::active_backend();
    ~BackendGuard() { k::set_backend(saved); }
};

}  // namespace

TEST_CASE("scalar exp kernel matches libm exactly") {
    Rng rng(1);
    std::vector<double> x(257), out(257);
    for (auto& v : x) {
        v = rng.uniform(-700.0, 5.0);
    }
    k::detail::exp_v_scalar(x.data(), out.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(out[i] == std::exp(x[i]));
    }
}

#if defined(RRDPS_HAVE_AVX2)
TEST_CASE("avx2 exp kernel is equivalent to the scalar reference") {
    if (k::preferred_backend() != k::Backend::avx2) {
        return;  // host cannot run the AVX2 path
    }
    Rng rng(2);
    std::vector<double> x;
    for (int i = 0; i < 4096; ++i) {
        x.push_back(rng.uniform(-700.0, 5.0));
    }
    // domain edges and values around the kernels' typical arguments
    for (double v : {0.0, -0.0, -1e-300, -1e-12, -0.5, -1.0, -707.9, 1.0,
                     705.0, 709.0, 1000.0, -1000.0}) {
        x.push_back(v);
    }
    std::vector<double> a(x.size()), b(x.size());
    k::detail::exp_v_scalar(x.data(), a.data(), x.size());
    k::detail::exp_v_avx2(x.data(), b.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::isfinite(a[i]) && std::isfinite(b[i])) {
            CHECK(rel_err(a[i], b[i]) <= 5e-15);
        } else {
            CHECK(a[i] == b[i]);  // overflow lanes agree exactly
        }
    }
}

TEST_CASE("avx2 gain and poisson kernels are equivalent to scalar") {
    if (k::preferred_backend() != k::Backend::avx2) {
        return;
    }
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(
                                      rng.uniform01() * 515);
        const double dark = rng.uniform(0.0, 1e-3);
        const double eta = rng.uniform(0.0, 0.05);
        std::vector<double> x(n);
        for (auto& v : x) {
            v = rng.uniform(0.0, 1.2);
        }

        // gains live in [0, 1]; the kernels agree to a few ulp of 1, which
        // is an absolute bound (relative error blows up as the gain -> 0
        // because 1 - survive*exp(...) cancels)
        std::vector<double> ga(n), gb(n);
        k::detail::gain_v_scalar(x.data(), n, dark, eta, ga.data());
        k::detail::gain_v_avx2(x.data(), n, dark, eta, gb.data());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(ga[i] - gb[i]) <= 2e-15);
        }

        CHECK(std::abs(k::detail::gain_mean_scalar(x.data(), n, dark, eta) -
                       k::detail::gain_mean_avx2(x.data(), n, dark, eta)) <=
              1e-14);

        const int k_max = 1 + static_cast<int>(rng.uniform01() * 30);
        std::vector<double> ma(k_max + 1), mb(k_max + 1);
        k::detail::poisson_mean_v_scalar(x.data(), n, k_max, ma.data());
        k::detail::poisson_mean_v_avx2(x.data(), n, k_max, mb.data());
        for (int kk = 0; kk <= k_max; ++kk) {
            CHECK(std::abs(ma[kk] - mb[kk]) <=
                  1e-13 * std::max(1.0, std::abs(ma[kk])));
        }
    }
}
#endif

TEST_CASE("poisson mean kernel agrees with the pmf on constant batches") {
    BackendGuard guard;
    for (k::Backend backend : {k::Backend::scalar, k::Backend::avx2}) {
        k::set_backend(backend);
        const std::vector<double> x(64, 0.37);
        std::vector<double> means(9);
        k::poisson_mean_v(x.data(), x.size(), 8, means.data());
        for (int kk = 0; kk <= 8; ++kk) {
            CHECK(means[kk] ==
                  doctest::Approx(poisson_pmf(kk, 0.37)).epsilon(1e-13));
        }
    }
}

TEST_CASE("gain mean kernel reduces to the closed form on constant batches") {
    BackendGuard guard;
    for (k::Backend backend : {k::Backend::scalar, k::Backend::avx2}) {
        k::set_backend(backend);
        const std::vector<double> x(100, 0.5);
        const double dark = 2.72e-5;
        const double eta = 0.0113;
        const double expected = 1.0 - (1.0 - dark) * std::exp(-0.5 * eta);
        CHECK(k::gain_mean(x.data(), x.size(), dark, eta) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("zero intensity batches hit the vacuum row exactly") {
    BackendGuard guard;
    for (k::Backend backend : {k::Backend::scalar, k::Backend::avx2}) {
        k::set_backend(backend);
        const std::vector<double> x(16, 0.0);
        std::vector<double> means(4);
        k::poisson_mean_v(x.data(), x.size(), 3, means.data());
        CHECK(means[0] == 1.0);
        CHECK(means[1] == 0.0);
        CHECK(means[2] == 0.0);
        CHECK(means[3] == 0.0);
    }
}
