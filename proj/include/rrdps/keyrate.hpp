#pragma once

#include <array>
#include <optional>

#include "rrdps/estimator.hpp"

namespace rrdps {

/// Scope of the 1/L factor on the error-correction term. "eq1" divides both
/// the privacy-amplification sum and the error-correction cost by the train
/// length; "eq2" divides only the sum. eq1 is the default.
enum class RateConvention { scaled_ec, unscaled_ec };

const char* convention_name(RateConvention c);
std::optional<RateConvention> parse_convention(std::string_view name);

/// Phase-error upper bound min(k / (L - 1), 1/2) for a k-photon train.
double phase_error_bound(int k, int train_len);

struct KeyRateResult {
    double rate = 0.0;  // max(computed, 0), per pulse
    YieldBounds q_bounds;
    std::array<double, 3> phase_errors{};
    double ec_cost = 0.0;  // Q_mu * f * H2(E_mu), before any 1/L factor
    bool feasible = false;  // computed rate > 0
    ValidationReport diagnostics;  // decoy-condition check, when performed
};

/// Key rate per pulse from the yield bounds, the signal-state QBER and the
/// phase-error bounds:
///   sum_{k<=2} Q_k^L [1 - H2(e_ph^k)]  minus the error-correction cost,
/// scaled per the convention. Negative computed rates are reported as 0 with
/// feasible = false so sweeps traverse infeasible regions gracefully.
KeyRateResult secure_key_rate(const YieldBounds& q_bounds,
                              const ObservedStats& obs,
                              const ChannelParams& params,
                              RateConvention convention = RateConvention::scaled_ec);

/// One full evaluation: photon bounds, decoy-condition validation, observed
/// statistics, yield bounds, key rate.
struct PointEvaluation {
    SourceEnsemble ensemble;
    ObservedStats observed;
    KeyRateResult result;
    bool validation_failed = false;
};

/// Runs the whole chain at one parameter point. A failed decoy-condition
/// check yields rate 0 with validation_failed set (never a silent compute);
/// degenerate denominators propagate as exceptions.
PointEvaluation evaluate_point(const SourceEnsemble& ensemble,
                               const ChannelParams& params,
                               RateConvention convention = RateConvention::scaled_ec);

}  // namespace rrdps
