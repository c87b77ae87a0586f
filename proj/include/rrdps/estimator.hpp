#pragma once

#include "rrdps/channel.hpp"
#include "rrdps/source.hpp"

namespace rrdps {

// The decoy estimator works in rate form throughout: the count identities
// are divided by the number of trains M, which turns every N_x/P_x into the
// directly measured gain Q_x and removes M from the computation exactly.

/// Cross products of photon-bound endpoints reused across the D1 and D2
/// bounds:
///   q1 = L(0,nu2) U(2,nu1) - U(0,nu1) L(2,nu2)
///   q2 = U(0,nu3) L(1,nu2) - L(0,nu2) U(1,nu3)
///   q3 = L(0,nu2) U(1,nu1) - U(0,nu1) L(1,nu2)
///   s1 = L(0,nu2) U(3,nu1) - U(0,nu1) L(3,nu2)
///   s2 = U(0,nu3) L(3,nu2) - L(0,nu2) U(3,nu3)
struct CoefficientSet {
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
};

CoefficientSet make_coefficients(const EnsembleBounds& bounds);

/// Lower bounds on the aggregate reciprocal mixture weights D_0, D_1, D_2
/// in rate form (divide-by-M applied; multiply by M for count form).
struct DBounds {
    double d0_lower = 0.0;
    double d1_lower = 0.0;
    double d2_lower = 0.0;
};

/// Yield lower bounds Q_k^L for the signal source, k = 0, 1, 2.
struct YieldBounds {
    double q0_lower = 0.0;
    double q1_lower = 0.0;
    double q2_lower = 0.0;

    double operator[](int k) const {
        return k == 0 ? q0_lower : (k == 1 ? q1_lower : q2_lower);
    }
};

/// Vacuum bound, clamped below at zero. Throws DegenerateDenominator when
/// L(1,nu1) U(0,nu2) - U(1,nu2) L(0,nu1) is not strictly positive.
double d0_lower(const ObservedStats& obs, const EnsembleBounds& bounds);

/// Single-photon bound, fed by the clamped d0; clamped below at zero.
double d1_lower(const ObservedStats& obs, const EnsembleBounds& bounds,
                const CoefficientSet& coeffs, double d0);

/// Two-photon bound, fed by the clamped d0 and d1; clamped below at zero.
double d2_lower(const ObservedStats& obs, const EnsembleBounds& bounds,
                const CoefficientSet& coeffs, double d0, double d1);

/// d0 -> d1 -> d2 evaluated sequentially with clamped values fed forward.
DBounds estimate_d_bounds(const ObservedStats& obs,
                          const EnsembleBounds& bounds);

/// Q_k^L = L(k,mu) * d_k, clamped to [0, 1]. Also evaluates the equivalent
/// closed-form expressions in terms of the gains directly and verifies both
/// routes agree to 1e-12 relative (a logic error otherwise).
YieldBounds yield_bounds(const ObservedStats& obs,
                         const EnsembleBounds& bounds, const DBounds& d);

}  // namespace rrdps
