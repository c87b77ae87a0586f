#pragma once

// Independent reference for the delta = 0 reduction: the standard
// four-intensity yield bounds with exact Poisson statistics, transcribed
// directly from the closed forms with local helpers. Deliberately shares no
// code with the library so it can serve as an oracle.

#include <algorithm>
#include <cmath>

namespace testref {

inline double pk(int k, double x) {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) {
        fact *= i;
    }
    return std::exp(-x) * std::pow(x, k) / fact;
}

struct CollapsedYields {
    double q0 = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
};

inline CollapsedYields collapsed_yield_bounds(double mu, double nu1,
                                              double nu2, double nu3,
                                              double q_mu, double q_nu1,
                                              double q_nu2, double q_nu3) {
    CollapsedYields out;

    const double den0 = pk(1, nu1) * pk(0, nu2) - pk(1, nu2) * pk(0, nu1);
    out.q0 = std::max(
        pk(0, mu) * (pk(1, nu1) * q_nu2 - pk(1, nu2) * q_nu1) / den0, 0.0);

    const double a1 = pk(0, nu2) * pk(2, nu1) - pk(0, nu1) * pk(2, nu2);
    const double a2 = pk(0, nu3) * pk(1, nu2) - pk(0, nu2) * pk(1, nu3);
    const double a3 = pk(0, nu2) * pk(1, nu1) - pk(0, nu1) * pk(1, nu2);
    const double b1 = pk(0, nu2) * pk(3, nu1) - pk(0, nu1) * pk(3, nu2);
    const double b2 = pk(0, nu3) * pk(3, nu2) - pk(0, nu2) * pk(3, nu3);

    const double den1 = a3 * pk(2, mu) - a1 * pk(1, mu);
    const double diff12 = pk(0, nu2) * q_nu1 - pk(0, nu1) * q_nu2;
    out.q1 = std::max(
        pk(1, mu) * (diff12 * pk(2, mu) - a1 * (q_mu - out.q0)) / den1, 0.0);

    const double r2 = pk(0, nu3) * pk(2, nu2) - pk(0, nu2) * pk(2, nu3);
    const double smix = b1 * a2 - b2 * a3;
    const double den2 = (a1 * a2 - r2 * a3) * pk(3, mu) - smix * pk(2, mu);
    const double diff23 = pk(0, nu3) * q_nu2 - pk(0, nu2) * q_nu3;
    out.q2 = std::max(pk(2, mu) *
                          ((diff12 * a2 - diff23 * a3) * pk(3, mu) -
                           smix * (q_mu - out.q0 - out.q1)) /
                          den2,
                      0.0);

    out.q0 = std::min(out.q0, 1.0);
    out.q1 = std::min(out.q1, 1.0);
    out.q2 = std::min(out.q2, 1.0);
    return out;
}

}  // namespace testref
