#pragma once

#include <array>
#include <string>
#include <vector>

#include "rrdps/types.hpp"

namespace rrdps {

/// One source state: nominal per-train intensity, maximum relative intensity
/// deviation, and the probability of selecting this source for a train.
struct SourceSpec {
    double intensity = 0.0;
    double delta = 0.0;
    double select_prob = 0.25;
};

/// Throws std::domain_error unless intensity >= 0, 0 <= delta < 1 and
/// 0 < select_prob < 1.
void validate(const SourceSpec& spec);

/// The four-intensity ensemble: signal plus three decoys.
struct SourceEnsemble {
    SourceSpec signal;
    SourceSpec decoy1;
    SourceSpec decoy2;
    SourceSpec decoy3;

    const SourceSpec& operator[](SourceId id) const;

    static SourceEnsemble with_common_delta(
        double mu, double nu1, double nu2, double nu3, double delta,
        const std::array<double, 4>& select_prob = {0.25, 0.25, 0.25, 0.25});
};

struct ValidationReport {
    bool pass = true;
    std::string first_violation;
};

/// Structural admissibility: selection probabilities sum to 1 (within 1e-12)
/// and the worst-case ordering holds over interval endpoints, so realized
/// intensities satisfy nu1_i >= nu2_i >= nu3_i >= 0 and
/// nu1_i + nu2_i + nu3_i < mu_i < 1 for every admissible error pattern:
///   nu1(1-d1) >= nu2(1+d2),  nu2(1-d2) >= nu3(1+d3),
///   nu1(1+d1) + nu2(1+d2) + nu3(1+d3) < mu(1-dmu),  mu(1+dmu) < 1.
ValidationReport check_ensemble(const SourceEnsemble& ensemble);

/// Photon-number probability intervals [lower(k), upper(k)] for one source,
/// k = 0..k_max.
struct PhotonBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    int k_max() const { return static_cast<int>(lower.size()) - 1; }
};

/// Interval bounds of the Poisson pmf over intensities in
/// [x(1-delta), x(1+delta)]: the pmf is unimodal in the intensity with mode
/// at k, so the minimum sits at an interval endpoint and the maximum at an
/// endpoint or at the mode when k falls inside the interval. For k >= 1 with
/// x(1+delta) <= k this reduces to lower = pmf(k, x(1-delta)),
/// upper = pmf(k, x(1+delta)); for k = 0 the roles of the endpoints swap.
PhotonBounds photon_bounds(const SourceSpec& spec, int k_max);

struct EnsembleBounds {
    std::array<PhotonBounds, 4> per_source;

    const PhotonBounds& operator[](SourceId id) const {
        return per_source[static_cast<int>(id)];
    }
    double lower(SourceId id, int k) const { return (*this)[id].lower[k]; }
    double upper(SourceId id, int k) const { return (*this)[id].upper[k]; }
};

EnsembleBounds ensemble_bounds(const SourceEnsemble& ensemble, int k_max);

/// Checks, for each adjacent source pair (mu,nu1), (nu1,nu2), (nu2,nu3) and
/// every 2 <= k <= k_max, the ratio chain
///   L(k)/U(k) >= L(2)/U(2) >= L(1)/U(1) >= L(0)/U(0)
/// where L is the lower bound of the stronger source and U the upper bound
/// of the weaker one. Ensemble-structure violations are reported before any
/// ratio check; a zero upper bound is reported as a violation.
ValidationReport validate_decoy_conditions(const SourceEnsemble& ensemble,
                                           const EnsembleBounds& bounds,
                                           int k_max);

}  // namespace rrdps
