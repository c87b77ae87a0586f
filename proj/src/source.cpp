#include "rrdps/source.hpp"

#include <cmath>
#include <sstream>

#include "rrdps/math.hpp"

namespace rrdps {

void validate(const SourceSpec& spec) {
    if (!(spec.intensity >= 0.0)) {
        throw std::domain_error("source intensity must be >= 0");
    }
    if (!(spec.delta >= 0.0 && spec.delta < 1.0)) {
        throw std::domain_error("source delta must lie in [0, 1)");
    }
    if (!(spec.select_prob > 0.0 && spec.select_prob < 1.0)) {
        throw std::domain_error("source selection probability must lie in (0, 1)");
    }
}

const SourceSpec& SourceEnsemble::operator[](SourceId id) const {
    switch (id) {
    case SourceId::signal: return signal;
    case SourceId::decoy1: return decoy1;
    case SourceId::decoy2: return decoy2;
    case SourceId::decoy3: return decoy3;
    }
    throw std::logic_error("bad SourceId");
}

SourceEnsemble SourceEnsemble::with_common_delta(
    double mu, double nu1, double nu2, double nu3, double delta,
    const std::array<double, 4>& select_prob) {
    return SourceEnsemble{{mu, delta, select_prob[0]},
                          {nu1, delta, select_prob[1]},
                          {nu2, delta, select_prob[2]},
                          {nu3, delta, select_prob[3]}};
}

namespace {

ValidationReport fail(std::string message) {
    return ValidationReport{false, std::move(message)};
}

}  // namespace

ValidationReport check_ensemble(const SourceEnsemble& e) {
    for (int s = 0; s < kNumSources; ++s) {
        const SourceId id = static_cast<SourceId>(s);
        const SourceSpec& spec = e[id];
        if (!(spec.intensity >= 0.0) || !(spec.delta >= 0.0 && spec.delta < 1.0) ||
            !(spec.select_prob > 0.0 && spec.select_prob < 1.0)) {
            return fail(std::string("invalid source spec for ") + source_name(id));
        }
    }
    const double prob_sum = e.signal.select_prob + e.decoy1.select_prob +
                            e.decoy2.select_prob + e.decoy3.select_prob;
    if (std::abs(prob_sum - 1.0) > 1e-12) {
        return fail("selection probabilities do not sum to 1");
    }

    const double mu_lo = e.signal.intensity * (1.0 - e.signal.delta);
    const double mu_hi = e.signal.intensity * (1.0 + e.signal.delta);
    const double nu1_lo = e.decoy1.intensity * (1.0 - e.decoy1.delta);
    const double nu1_hi = e.decoy1.intensity * (1.0 + e.decoy1.delta);
    const double nu2_lo = e.decoy2.intensity * (1.0 - e.decoy2.delta);
    const double nu2_hi = e.decoy2.intensity * (1.0 + e.decoy2.delta);
    const double nu3_hi = e.decoy3.intensity * (1.0 + e.decoy3.delta);

    if (!(nu1_lo >= nu2_hi)) {
        return fail("worst-case ordering nu1(1-d) >= nu2(1+d) violated");
    }
    if (!(nu2_lo >= nu3_hi)) {
        return fail("worst-case ordering nu2(1-d) >= nu3(1+d) violated");
    }
    if (!(nu1_hi + nu2_hi + nu3_hi < mu_lo)) {
        return fail("worst-case sum nu1+nu2+nu3 < mu violated");
    }
    if (!(mu_hi < 1.0)) {
        return fail("worst-case bound mu(1+d) < 1 violated");
    }
    return ValidationReport{};
}

PhotonBounds photon_bounds(const SourceSpec& spec, int k_max) {
    validate(spec);
    if (k_max < 3) {
        throw std::domain_error("photon_bounds: k_max must be >= 3");
    }
    const double lo = spec.intensity * (1.0 - spec.delta);
    const double hi = spec.intensity * (1.0 + spec.delta);

    PhotonBounds b;
    b.lower.resize(k_max + 1);
    b.upper.resize(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        const double at_lo = poisson_pmf(k, lo);
        const double at_hi = poisson_pmf(k, hi);
        double lower = std::min(at_lo, at_hi);
        double upper = std::max(at_lo, at_hi);
        // pmf(k, x) peaks at x = k; include the interior mode in the upper
        // bound when it falls inside the intensity interval.
        if (k >= 1 && lo <= static_cast<double>(k) &&
            static_cast<double>(k) <= hi) {
            upper = std::max(upper, poisson_pmf(k, static_cast<double>(k)).value());
        }
        b.lower[k] = lower;
        b.upper[k] = upper;
    }
    return b;
}

EnsembleBounds ensemble_bounds(const SourceEnsemble& ensemble, int k_max) {
    return EnsembleBounds{{photon_bounds(ensemble.signal, k_max),
                           photon_bounds(ensemble.decoy1, k_max),
                           photon_bounds(ensemble.decoy2, k_max),
                           photon_bounds(ensemble.decoy3, k_max)}};
}

namespace {

// Ratio chain L(k)/U(k) >= L(2)/U(2) >= L(1)/U(1) >= L(0)/U(0) for one
// source pair, compared by cross-multiplication.
ValidationReport check_chain(SourceId strong, SourceId weak,
                             const PhotonBounds& sb, const PhotonBounds& wb,
                             int k_max) {
    std::ostringstream name;
    name << "(" << source_name(strong) << "," << source_name(weak) << ")";

    for (int k = 0; k <= k_max; ++k) {
        if (wb.upper[k] == 0.0) {
            return fail("pair " + name.str() + ": zero upper bound at k=" +
                        std::to_string(k) + " makes the ratio undefined");
        }
    }
    auto ratio_ge = [&](int ka, int kb) {
        return sb.lower[ka] * wb.upper[kb] >= sb.lower[kb] * wb.upper[ka];
    };
    if (!ratio_ge(1, 0)) {
        return fail("pair " + name.str() + ": L(1)/U(1) >= L(0)/U(0) violated");
    }
    if (!ratio_ge(2, 1)) {
        return fail("pair " + name.str() + ": L(2)/U(2) >= L(1)/U(1) violated");
    }
    for (int k = 3; k <= k_max; ++k) {
        if (!ratio_ge(k, 2)) {
            return fail("pair " + name.str() + ": L(" + std::to_string(k) +
                        ")/U(" + std::to_string(k) + ") >= L(2)/U(2) violated");
        }
    }
    return ValidationReport{};
}

}  // namespace

ValidationReport validate_decoy_conditions(const SourceEnsemble& ensemble,
                                           const EnsembleBounds& bounds,
                                           int k_max) {
    ValidationReport structural = check_ensemble(ensemble);
    if (!structural.pass) {
        return structural;
    }
    if (k_max < 3 || bounds[SourceId::signal].k_max() < k_max ||
        bounds[SourceId::decoy1].k_max() < k_max ||
        bounds[SourceId::decoy2].k_max() < k_max ||
        bounds[SourceId::decoy3].k_max() < k_max) {
        throw std::domain_error(
            "validate_decoy_conditions: bounds not computed to k_max >= 3");
    }

    const std::array<std::pair<SourceId, SourceId>, 3> pairs{{
        {SourceId::signal, SourceId::decoy1},
        {SourceId::decoy1, SourceId::decoy2},
        {SourceId::decoy2, SourceId::decoy3},
    }};
    for (const auto& [strong, weak] : pairs) {
        ValidationReport r =
            check_chain(strong, weak, bounds[strong], bounds[weak], k_max);
        if (!r.pass) {
            return r;
        }
    }
    return ValidationReport{};
}

}  // namespace rrdps
