#include "rrdps/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace rrdps::kernels {

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

Backend preferred_backend() {
    if (const char* env = std::getenv("RRDPS_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) {
            return Backend::scalar;
        }
        if (std::strcmp(env, "avx2") == 0) {
            return Backend::avx2;
        }
    }
#if defined(RRDPS_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return Backend::avx2;
    }
#endif
    return Backend::scalar;
}

namespace {

std::atomic<Backend> g_backend{preferred_backend()};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
#if !defined(RRDPS_HAVE_AVX2)
    if (b == Backend::avx2) {
        b = Backend::scalar;
    }
#endif
    g_backend.store(b, std::memory_order_relaxed);
}

void exp_v(const double* x, double* out, std::size_t n) {
#if defined(RRDPS_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        detail::exp_v_avx2(x, out, n);
        return;
    }
#endif
    detail::exp_v_scalar(x, out, n);
}

void gain_v(const double* intensity, std::size_t n, double dark, double eta,
            double* out) {
#if defined(RRDPS_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        detail::gain_v_avx2(intensity, n, dark, eta, out);
        return;
    }
#endif
    detail::gain_v_scalar(intensity, n, dark, eta, out);
}

double gain_mean(const double* intensity, std::size_t n, double dark,
                 double eta) {
#if defined(RRDPS_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        return detail::gain_mean_avx2(intensity, n, dark, eta);
    }
#endif
    return detail::gain_mean_scalar(intensity, n, dark, eta);
}

void poisson_mean_v(const double* intensity, std::size_t n, int k_max,
                    double* means) {
#if defined(RRDPS_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        detail::poisson_mean_v_avx2(intensity, n, k_max, means);
        return;
    }
#endif
    detail::poisson_mean_v_scalar(intensity, n, k_max, means);
}

}  // namespace rrdps::kernels
