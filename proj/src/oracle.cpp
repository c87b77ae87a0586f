#include "rrdps/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rrdps/estimator.hpp"
#include "rrdps/kernels.hpp"
#include "rrdps/math.hpp"
#include "rrdps/rng.hpp"

namespace rrdps {

const char* pattern_kind_name(PatternKind kind) {
    switch (kind) {
    case PatternKind::constant_low: return "constant-low";
    case PatternKind::constant_high: return "constant-high";
    case PatternKind::alternating: return "alternating";
    case PatternKind::sinusoidal: return "sinusoidal";
    case PatternKind::seeded_random: return "seeded-random";
    }
    return "?";
}

namespace {

void require_pattern_size(std::size_t n) {
    if (n == 0) {
        throw std::domain_error("error pattern must have at least one train");
    }
}

}  // namespace

ErrorPattern ErrorPattern::constant_low(double delta, std::size_t n) {
    require_pattern_size(n);
    return ErrorPattern{std::vector<double>(n, 1.0 - delta),
                        PatternKind::constant_low};
}

ErrorPattern ErrorPattern::constant_high(double delta, std::size_t n) {
    require_pattern_size(n);
    return ErrorPattern{std::vector<double>(n, 1.0 + delta),
                        PatternKind::constant_high};
}

ErrorPattern ErrorPattern::alternating(double delta, std::size_t n) {
    require_pattern_size(n);
    ErrorPattern p{std::vector<double>(n), PatternKind::alternating};
    for (std::size_t i = 0; i < n; ++i) {
        p.multipliers[i] = (i % 2 == 0) ? 1.0 - delta : 1.0 + delta;
    }
    return p;
}

ErrorPattern ErrorPattern::sinusoidal(double delta, std::size_t n) {
    require_pattern_size(n);
    ErrorPattern p{std::vector<double>(n), PatternKind::sinusoidal};
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = 2.0 * M_PI * static_cast<double>(i) /
                             static_cast<double>(n);
        p.multipliers[i] = 1.0 + delta * std::sin(phase);
    }
    return p;
}

ErrorPattern ErrorPattern::seeded_random(double delta, std::size_t n,
                                         std::uint64_t seed) {
    require_pattern_size(n);
    Rng rng(seed);
    ErrorPattern p{std::vector<double>(n), PatternKind::seeded_random};
    for (std::size_t i = 0; i < n; ++i) {
        p.multipliers[i] = rng.uniform(1.0 - delta, 1.0 + delta);
    }
    return p;
}

double OracleTally::count(SourceId id, const SourceEnsemble& ensemble,
                          double trains) const {
    return gain[static_cast<int>(id)] * ensemble[id].select_prob * trains;
}

double OracleTally::signal_count(int k, const SourceEnsemble& ensemble,
                                 double trains) const {
    return signal_yield.at(k) * ensemble.signal.select_prob * trains;
}

namespace {

void require_admissible(const ErrorPattern& pattern,
                        const SourceEnsemble& ensemble) {
    require_pattern_size(pattern.multipliers.size());
    const ValidationReport structural = check_ensemble(ensemble);
    if (!structural.pass) {
        throw std::domain_error("inadmissible ensemble for pattern: " +
                                structural.first_violation);
    }
    for (int s = 0; s < kNumSources; ++s) {
        const double delta = ensemble[static_cast<SourceId>(s)].delta;
        for (double m : pattern.multipliers) {
            if (!(m >= 1.0 - delta && m <= 1.0 + delta)) {
                throw std::domain_error(
                    "pattern multiplier outside [1-delta, 1+delta] for " +
                    std::string(source_name(static_cast<SourceId>(s))));
            }
        }
    }
}

}  // namespace

int default_cutoff(const SourceEnsemble& ensemble) {
    double top = 0.0;
    for (int s = 0; s < kNumSources; ++s) {
        const SourceSpec& spec = ensemble[static_cast<SourceId>(s)];
        top = std::max(top, spec.intensity * (1.0 + spec.delta));
    }
    return std::max(3, poisson_cutoff(top, kDefaultTailEpsilon));
}

OracleTally expected_tally(const ErrorPattern& pattern,
                           const SourceEnsemble& ensemble,
                           const ChannelParams& params, int cutoff) {
    require_admissible(pattern, ensemble);
    validate(params);
    if (cutoff < 0) {
        throw std::domain_error("expected_tally: negative cutoff");
    }

    std::vector<double> yields(cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) {
        yields[k] = yield_k(k, params);
    }

    const std::size_t n = pattern.multipliers.size();
    std::vector<double> scaled(n);
    std::vector<double> means(cutoff + 1);

    OracleTally tally;
    for (int s = 0; s < kNumSources; ++s) {
        const double x = ensemble[static_cast<SourceId>(s)].intensity;
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i] = x * pattern.multipliers[i];
        }
        kernels::poisson_mean_v(scaled.data(), n, cutoff, means.data());
        double q = 0.0;
        for (int k = 0; k <= cutoff; ++k) {
            q += means[k] * yields[k];
        }
        tally.gain[s] = q;
        if (static_cast<SourceId>(s) == SourceId::signal) {
            tally.signal_yield.resize(cutoff + 1);
            for (int k = 0; k <= cutoff; ++k) {
                tally.signal_yield[k] = yields[k] * means[k];
            }
        }
    }
    return tally;
}

double reciprocal_mixture_weight(const ErrorPattern& pattern,
                                 const SourceEnsemble& ensemble, int k,
                                 std::size_t index) {
    const double m = pattern.multipliers.at(index);
    double mix = 0.0;
    for (int s = 0; s < kNumSources; ++s) {
        const SourceSpec& spec = ensemble[static_cast<SourceId>(s)];
        mix += spec.select_prob * poisson_pmf(k, spec.intensity * m);
    }
    if (mix == 0.0) {
        throw std::domain_error("reciprocal_mixture_weight: zero mixture mass");
    }
    return 1.0 / mix;
}

namespace {

bool outside(double value, double lower, double upper) {
    const double slack = 1e-14 * std::max(1.0, std::max(lower, upper));
    return value < lower - slack || value > upper + slack;
}

}  // namespace

VerifyReport verify_bounds(const ErrorPattern& pattern,
                           const SourceEnsemble& ensemble,
                           const ChannelParams& params, int cutoff,
                           const VerifyOptions& options) {
    const OracleTally tally = expected_tally(pattern, ensemble, params, cutoff);

    const int k_max = std::max(3, cutoff);
    const EnsembleBounds bounds = ensemble_bounds(ensemble, k_max);

    // Interval containment of every realized pmf, k <= 3.
    for (int s = 0; s < kNumSources; ++s) {
        const SourceId id = static_cast<SourceId>(s);
        const double x = ensemble[id].intensity;
        for (int k = 0; k <= 3; ++k) {
            for (std::size_t i = 0; i < pattern.multipliers.size(); ++i) {
                const double p = poisson_pmf(k, x * pattern.multipliers[i]);
                if (outside(p, bounds.lower(id, k), bounds.upper(id, k))) {
                    std::ostringstream msg;
                    msg << "containment violated for " << source_name(id)
                        << " at k=" << k << " index=" << i;
                    return VerifyReport{false, 0.0, msg.str()};
                }
            }
        }
    }

    ObservedStats obs;
    obs.gain = tally.gain;
    for (int s = 0; s < kNumSources; ++s) {
        obs.qber[s] = qber(ensemble[static_cast<SourceId>(s)].intensity, params);
    }

    YieldBounds yields;
    try {
        if (options.corrupt_q1) {
            CoefficientSet coeffs = make_coefficients(bounds);
            coeffs.q1 = -coeffs.q1;
            const double d0 = d0_lower(obs, bounds);
            const double d1 = d1_lower(obs, bounds, coeffs, d0);
            const double d2 = d2_lower(obs, bounds, coeffs, d0, d1);
            yields.q0_lower =
                std::clamp(bounds.lower(SourceId::signal, 0) * d0, 0.0, 1.0);
            yields.q1_lower =
                std::clamp(bounds.lower(SourceId::signal, 1) * d1, 0.0, 1.0);
            yields.q2_lower =
                std::clamp(bounds.lower(SourceId::signal, 2) * d2, 0.0, 1.0);
        } else {
            const DBounds d = estimate_d_bounds(obs, bounds);
            yields = yield_bounds(obs, bounds, d);
        }
    } catch (const DegenerateDenominator& err) {
        return VerifyReport{false, 0.0,
                            std::string("estimator degeneracy: ") + err.what()};
    }

    VerifyReport report;
    report.worst_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        const double margin = tally.signal_yield[k] - yields[k];
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
        }
    }
    report.pass = report.worst_margin >= -options.tolerance;
    if (!report.pass && report.detail.empty()) {
        std::ostringstream msg;
        msg << "soundness margin " << report.worst_margin << " below "
            << -options.tolerance;
        report.detail = msg.str();
    }
    return report;
}

}  // namespace rrdps
