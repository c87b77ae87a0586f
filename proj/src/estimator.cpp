#include "rrdps/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace rrdps {

namespace {

constexpr SourceId kMu = SourceId::signal;
constexpr SourceId kNu1 = SourceId::decoy1;
constexpr SourceId kNu2 = SourceId::decoy2;
constexpr SourceId kNu3 = SourceId::decoy3;

// Denominators are differences of probability products; rounding noise in
// them is ~1e-18 absolute. Below this floor the quotient is numerically
// meaningless (cancellation noise can inflate the bound without limit), so
// tiny-positive denominators are rejected just like nonpositive ones.
constexpr double kDenominatorFloor = 1e-9;

void require_positive(double denominator, const char* which) {
    if (!(denominator > kDenominatorFloor)) {
        throw DegenerateDenominator(
            std::string(which) +
            " denominator is not meaningfully positive (inadmissible "
            "ensemble): " +
            std::to_string(denominator));
    }
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

CoefficientSet make_coefficients(const EnsembleBounds& b) {
    CoefficientSet c;
    c.q1 = b.lower(kNu2, 0) * b.upper(kNu1, 2) - b.upper(kNu1, 0) * b.lower(kNu2, 2);
    c.q2 = b.upper(kNu3, 0) * b.lower(kNu2, 1) - b.lower(kNu2, 0) * b.upper(kNu3, 1);
    c.q3 = b.lower(kNu2, 0) * b.upper(kNu1, 1) - b.upper(kNu1, 0) * b.lower(kNu2, 1);
    c.s1 = b.lower(kNu2, 0) * b.upper(kNu1, 3) - b.upper(kNu1, 0) * b.lower(kNu2, 3);
    c.s2 = b.upper(kNu3, 0) * b.lower(kNu2, 3) - b.lower(kNu2, 0) * b.upper(kNu3, 3);
    return c;
}

double d0_lower(const ObservedStats& obs, const EnsembleBounds& b) {
    const double den =
        b.lower(kNu1, 1) * b.upper(kNu2, 0) - b.upper(kNu2, 1) * b.lower(kNu1, 0);
    require_positive(den, "d0");
    const double num = b.lower(kNu1, 1) * obs.gain_of(kNu2) -
                       b.upper(kNu2, 1) * obs.gain_of(kNu1);
    return std::max(num / den, 0.0);
}

double d1_lower(const ObservedStats& obs, const EnsembleBounds& b,
                const CoefficientSet& c, double d0) {
    const double den = c.q3 * b.lower(kMu, 2) - c.q1 * b.lower(kMu, 1);
    require_positive(den, "d1");
    const double decoy_diff = b.lower(kNu2, 0) * obs.gain_of(kNu1) -
                              b.upper(kNu1, 0) * obs.gain_of(kNu2);
    const double signal_rest = obs.gain_of(kMu) - b.lower(kMu, 0) * d0;
    const double num = decoy_diff * b.lower(kMu, 2) - c.q1 * signal_rest;
    return std::max(num / den, 0.0);
}

double d2_lower(const ObservedStats& obs, const EnsembleBounds& b,
                const CoefficientSet& c, double d0, double d1) {
    const double r2 =
        b.upper(kNu3, 0) * b.lower(kNu2, 2) - b.lower(kNu2, 0) * b.upper(kNu3, 2);
    const double s_mix = c.s1 * c.q2 - c.s2 * c.q3;
    const double den =
        (c.q1 * c.q2 - r2 * c.q3) * b.lower(kMu, 3) - s_mix * b.lower(kMu, 2);
    require_positive(den, "d2");

    const double diff12 = b.lower(kNu2, 0) * obs.gain_of(kNu1) -
                          b.upper(kNu1, 0) * obs.gain_of(kNu2);
    const double diff23 = b.upper(kNu3, 0) * obs.gain_of(kNu2) -
                          b.lower(kNu2, 0) * obs.gain_of(kNu3);
    const double signal_rest =
        obs.gain_of(kMu) - b.lower(kMu, 0) * d0 - b.lower(kMu, 1) * d1;
    const double num =
        (diff12 * c.q2 - diff23 * c.q3) * b.lower(kMu, 3) - s_mix * signal_rest;
    return std::max(num / den, 0.0);
}

DBounds estimate_d_bounds(const ObservedStats& obs, const EnsembleBounds& b) {
    const CoefficientSet c = make_coefficients(b);
    DBounds d;
    d.d0_lower = d0_lower(obs, b);
    d.d1_lower = d1_lower(obs, b, c, d.d0_lower);
    d.d2_lower = d2_lower(obs, b, c, d.d0_lower, d.d1_lower);
    return d;
}

namespace {

// Closed-form route: the same bounds written directly in terms of the gains,
// with the clamped yield bounds substituted stage by stage. Used as a
// cross-check of the d-chain route; the two differ only in floating-point
// association.
YieldBounds yields_closed_form(const ObservedStats& obs,
                               const EnsembleBounds& b,
                               const CoefficientSet& c) {
    YieldBounds y;

    const double den0 =
        b.lower(kNu1, 1) * b.upper(kNu2, 0) - b.upper(kNu2, 1) * b.lower(kNu1, 0);
    require_positive(den0, "d0");
    y.q0_lower = clamp_unit(std::max(
        b.lower(kMu, 0) *
            (b.lower(kNu1, 1) * obs.gain_of(kNu2) -
             b.upper(kNu2, 1) * obs.gain_of(kNu1)) /
            den0,
        0.0));

    const double den1 = c.q3 * b.lower(kMu, 2) - c.q1 * b.lower(kMu, 1);
    require_positive(den1, "d1");
    const double diff12 = b.lower(kNu2, 0) * obs.gain_of(kNu1) -
                          b.upper(kNu1, 0) * obs.gain_of(kNu2);
    y.q1_lower = clamp_unit(std::max(
        b.lower(kMu, 1) *
            (diff12 * b.lower(kMu, 2) - c.q1 * (obs.gain_of(kMu) - y.q0_lower)) /
            den1,
        0.0));

    const double r2 =
        b.upper(kNu3, 0) * b.lower(kNu2, 2) - b.lower(kNu2, 0) * b.upper(kNu3, 2);
    const double s_mix = c.s1 * c.q2 - c.s2 * c.q3;
    const double den2 =
        (c.q1 * c.q2 - r2 * c.q3) * b.lower(kMu, 3) - s_mix * b.lower(kMu, 2);
    require_positive(den2, "d2");
    const double diff23 = b.upper(kNu3, 0) * obs.gain_of(kNu2) -
                          b.lower(kNu2, 0) * obs.gain_of(kNu3);
    y.q2_lower = clamp_unit(std::max(
        b.lower(kMu, 2) *
            ((diff12 * c.q2 - diff23 * c.q3) * b.lower(kMu, 3) -
             s_mix * (obs.gain_of(kMu) - y.q0_lower - y.q1_lower)) /
            den2,
        0.0));
    return y;
}

void check_route_agreement(double a, double bvalue, const char* which) {
    // Relative 1e-12 with an absolute floor: the routes differ only in
    // association order, so near-cancelled bounds (~1e-17 absolute noise)
    // cannot hold a relative tolerance.
    const double scale = std::max({std::abs(a), std::abs(bvalue), 0.01});
    if (std::abs(a - bvalue) > 1e-12 * scale) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      "yield bound routes disagree for %s: %.17g vs %.17g",
                      which, a, bvalue);
        throw std::logic_error(msg);
    }
}

}  // namespace

YieldBounds yield_bounds(const ObservedStats& obs, const EnsembleBounds& b,
                         const DBounds& d) {
    YieldBounds y;
    y.q0_lower = clamp_unit(b.lower(kMu, 0) * d.d0_lower);
    y.q1_lower = clamp_unit(b.lower(kMu, 1) * d.d1_lower);
    y.q2_lower = clamp_unit(b.lower(kMu, 2) * d.d2_lower);

    const YieldBounds closed = yields_closed_form(obs, b, make_coefficients(b));
    check_route_agreement(y.q0_lower, closed.q0_lower, "Q0");
    check_route_agreement(y.q1_lower, closed.q1_lower, "Q1");
    check_route_agreement(y.q2_lower, closed.q2_lower, "Q2");
    return y;
}

}  // namespace rrdps
