#include "rrdps/keyrate.hpp"

#include <algorithm>
#include <cmath>

#include "rrdps/math.hpp"

namespace rrdps {

const char* convention_name(RateConvention c) {
    return c == RateConvention::scaled_ec ? "eq1" : "eq2";
}

std::optional<RateConvention> parse_convention(std::string_view name) {
    if (name == "eq1") {
        return RateConvention::scaled_ec;
    }
    if (name == "eq2") {
        return RateConvention::unscaled_ec;
    }
    return std::nullopt;
}

double phase_error_bound(int k, int train_len) {
    if (train_len < 2) {
        throw std::domain_error("phase_error_bound: train length must be >= 2");
    }
    if (k < 0) {
        throw std::domain_error("phase_error_bound: negative photon number");
    }
    return std::min(static_cast<double>(k) / (train_len - 1), 0.5);
}

KeyRateResult secure_key_rate(const YieldBounds& q_bounds,
                              const ObservedStats& obs,
                              const ChannelParams& params,
                              RateConvention convention) {
    validate(params);
    const double q_mu = obs.gain_of(SourceId::signal);
    if (q_mu == 0.0) {
        throw std::domain_error("secure_key_rate: signal gain is zero");
    }

    KeyRateResult r;
    r.q_bounds = q_bounds;
    double pa_sum = 0.0;
    for (int k = 0; k < 3; ++k) {
        r.phase_errors[k] = phase_error_bound(k, params.train_len);
        pa_sum += q_bounds[k] * (1.0 - binary_entropy(r.phase_errors[k]));
    }
    r.ec_cost = q_mu * params.corr_eff *
                binary_entropy(obs.qber_of(SourceId::signal));

    const double inv_len = 1.0 / params.train_len;
    const double computed = convention == RateConvention::scaled_ec
                                ? inv_len * (pa_sum - r.ec_cost)
                                : inv_len * pa_sum - r.ec_cost;
    r.feasible = computed > 0.0;
    r.rate = std::max(computed, 0.0);
    return r;
}

PointEvaluation evaluate_point(const SourceEnsemble& ensemble,
                               const ChannelParams& params,
                               RateConvention convention) {
    validate(params);

    PointEvaluation eval;
    eval.ensemble = ensemble;

    ValidationReport structural = check_ensemble(ensemble);
    if (!structural.pass) {
        eval.validation_failed = true;
        eval.result.diagnostics = structural;
        return eval;
    }

    const double top_intensity =
        ensemble.signal.intensity * (1.0 + ensemble.signal.delta);
    const int k_max =
        std::max(3, poisson_cutoff(top_intensity, kDefaultTailEpsilon));
    const EnsembleBounds bounds = ensemble_bounds(ensemble, k_max);

    ValidationReport conditions =
        validate_decoy_conditions(ensemble, bounds, k_max);
    if (!conditions.pass) {
        eval.validation_failed = true;
        eval.result.diagnostics = conditions;
        return eval;
    }

    eval.observed = observe(ensemble, params);
    const DBounds d = estimate_d_bounds(eval.observed, bounds);
    const YieldBounds yields = yield_bounds(eval.observed, bounds, d);
    eval.result = secure_key_rate(yields, eval.observed, params, convention);
    eval.result.diagnostics = conditions;
    return eval;
}

}  // namespace rrdps
