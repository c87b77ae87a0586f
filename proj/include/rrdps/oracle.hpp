#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrdps/channel.hpp"
#include "rrdps/source.hpp"

namespace rrdps {

// Independent ground truth for the estimator: per-train intensity error
// patterns, exact expected count rates, and a certifier that the estimated
// lower bounds never exceed the truth. Works at the expectation level, which
// is the exact asymptotic limit of the counting model, so no statistical
// tolerance is involved.

enum class PatternKind {
    constant_low,
    constant_high,
    alternating,
    sinusoidal,
    seeded_random,
};

const char* pattern_kind_name(PatternKind kind);

/// Per-train relative intensity multipliers, each within [1-delta, 1+delta].
struct ErrorPattern {
    std::vector<double> multipliers;
    PatternKind kind = PatternKind::constant_low;

    static ErrorPattern constant_low(double delta, std::size_t n);
    static ErrorPattern constant_high(double delta, std::size_t n);
    static ErrorPattern alternating(double delta, std::size_t n);
    static ErrorPattern sinusoidal(double delta, std::size_t n);
    static ErrorPattern seeded_random(double delta, std::size_t n,
                                      std::uint64_t seed);
};

/// Expected count rates under a fixed error pattern.
struct OracleTally {
    std::array<double, 4> gain{};      // Q_x, per source
    std::vector<double> signal_yield;  // Q_{k,mu}, k = 0..cutoff

    /// Count form for a hypothetical number of trains M.
    double count(SourceId id, const SourceEnsemble& ensemble, double trains) const;
    double signal_count(int k, const SourceEnsemble& ensemble, double trains) const;
};

/// Expected gain of source x: the pattern mean of the truncated series
/// sum_{k<=cutoff} pmf(k, x m_i) Y_k; expected per-k signal rate:
/// Y_k times the pattern mean of pmf(k, mu m_i). Throws std::domain_error
/// when a multiplier is inadmissible for some source.
OracleTally expected_tally(const ErrorPattern& pattern,
                           const SourceEnsemble& ensemble,
                           const ChannelParams& params, int cutoff);

/// Reciprocal mixture weight of a k-photon train at pattern index i:
/// 1 / sum_x P_x pmf(k, x m_i).
double reciprocal_mixture_weight(const ErrorPattern& pattern,
                                 const SourceEnsemble& ensemble, int k,
                                 std::size_t index);

struct VerifyOptions {
    double tolerance = 1e-12;
    /// Negative control: sign-flip the q1 coefficient inside the estimator
    /// so the certifier must catch the now-invalid bound.
    bool corrupt_q1 = false;
};

struct VerifyReport {
    bool pass = false;
    double worst_margin = 0.0;  // min over k of Q_k^true - Q_k^L
    std::string detail;         // first failure cause, empty on pass
};

/// Runs the estimator on the pattern's expected gains and checks
/// Q_k^L <= Q_k^true + tolerance for k = 0, 1, 2, plus interval containment
/// of pmf(k, x m_i) in the photon bounds for every index and k <= 3.
/// Estimator degeneracy errors are reported as failures with the cause
/// attached.
VerifyReport verify_bounds(const ErrorPattern& pattern,
                           const SourceEnsemble& ensemble,
                           const ChannelParams& params, int cutoff,
                           const VerifyOptions& options = {});

/// Default series cutoff for a tally: the Poisson cutoff of the largest
/// realized intensity at the default tail epsilon.
int default_cutoff(const SourceEnsemble& ensemble);

}  // namespace rrdps
