#include "rrdps/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rrdps/format.hpp"
#include "rrdps/rng.hpp"

namespace rrdps {

void validate(const SearchConfig& c) {
    if (c.grid_resolution < 4) {
        throw std::domain_error("search grid resolution must be >= 4");
    }
    if (c.refine_rounds < 1) {
        throw std::domain_error("search refine rounds must be >= 1");
    }
    if (c.multistart < 0) {
        throw std::domain_error("search multistart must be >= 0");
    }
    auto box_ok = [](double lo, double hi) {
        return lo >= 0.0 && lo <= hi && hi < 1.0;
    };
    if (!box_ok(c.mu_lo, c.mu_hi) || !box_ok(c.nu1_lo, c.nu1_hi) ||
        !(c.nu2_lo >= 0.0 && c.nu2_lo < 1.0) ||
        !(c.nu3_lo >= 0.0 && c.nu3_lo < 1.0)) {
        throw std::domain_error("search bounds box must lie within [0, 1)");
    }
}

namespace {

// Constraint guard so intensities quantized to 12 significant digits can
// never flip a worst-case ordering check.
constexpr double kMargin = 1e-9;

struct Objective {
    const ChannelParams& params;
    double delta;
    const SearchConfig& search;
    RateConvention convention;

    // Worst-case decoy ordering as coordinate caps, with margin.
    double ratio_cap() const {
        return (1.0 - delta) / (1.0 + delta) / (1.0 + kMargin);
    }
    double mu_cap() const {
        return std::min(search.mu_hi, (1.0 - kMargin) / (1.0 + delta));
    }
    // nu1 + nu2 + nu3 <= sum_cap(mu)
    double sum_cap(double mu) const { return mu * ratio_cap(); }

    bool in_intervals(const Intensities& iv) const {
        // Absolute 1e-12 slack: quantization to 12 significant digits moves
        // a coordinate by less than this, and the hard constraints carry a
        // much larger kMargin guard.
        for (int coord = 0; coord < 4; ++coord) {
            auto [lo, hi] = coordinate_interval(coord, iv);
            if (!(lo - 1e-12 <= iv[coord] && iv[coord] <= hi + 1e-12)) {
                return false;
            }
        }
        return true;
    }

    // Repairs a start into the feasible region. Already-feasible points are
    // returned unchanged: injected starts from other sweep points must keep
    // their evaluated rate so cross-seeding dominance arguments hold.
    Intensities clamp_feasible(Intensities iv) const {
        if (in_intervals(iv)) {
            return iv;
        }
        for (int coord = 0; coord < 4; ++coord) {
            auto [lo, hi] = coordinate_interval(coord, iv);
            iv[coord] = lo <= hi ? std::clamp(iv[coord], lo, hi) : hi;
        }
        if (in_intervals(iv)) {
            return iv;
        }
        // Deep violation: rebuild from a fixed partition of the sum budget.
        const double mu = std::clamp(iv[0], std::min(search.mu_lo, mu_cap()),
                                     mu_cap());
        const double s = sum_cap(mu);
        const double nu1 =
            std::min({std::max(iv[1], search.nu1_lo), search.nu1_hi, 0.9 * s});
        const double nu2 = std::min(
            {std::max(iv[2], search.nu2_lo), nu1 * ratio_cap(), 0.09 * s});
        const double nu3 = std::min(
            {std::max(iv[3], search.nu3_lo), nu2 * ratio_cap(), 0.009 * s});
        return {mu, nu1, nu2, nu3};
    }

    // Feasible interval of one coordinate with the others held fixed.
    // Returns {lo, hi}; empty when lo > hi.
    std::pair<double, double> coordinate_interval(int coord,
                                                  const Intensities& iv) const {
        switch (coord) {
        case 0: {
            const double need = (iv[1] + iv[2] + iv[3]) / ratio_cap();
            return {std::max(search.mu_lo, need), mu_cap()};
        }
        case 1: {
            const double lo = std::max(search.nu1_lo, iv[2] / ratio_cap());
            const double hi = std::min(search.nu1_hi,
                                       sum_cap(iv[0]) - iv[2] - iv[3]);
            return {lo, hi};
        }
        case 2: {
            const double lo = std::max(search.nu2_lo, iv[3] / ratio_cap());
            const double hi = std::min(iv[1] * ratio_cap(),
                                       sum_cap(iv[0]) - iv[1] - iv[3]);
            return {lo, hi};
        }
        default: {
            const double hi = std::min(iv[2] * ratio_cap(),
                                       sum_cap(iv[0]) - iv[1] - iv[2]);
            return {search.nu3_lo, hi};
        }
        }
    }

    Intensities quantize(const Intensities& iv) const {
        return {quantize_sig12(iv[0]), quantize_sig12(iv[1]),
                quantize_sig12(iv[2]), quantize_sig12(iv[3])};
    }

    // Evaluates the quantized candidate; infeasible, invalid or degenerate
    // candidates score zero rate.
    std::optional<OptimumPoint> evaluate(const Intensities& raw) const {
        const Intensities iv = quantize(raw);
        const SourceEnsemble ensemble = SourceEnsemble::with_common_delta(
            iv[0], iv[1], iv[2], iv[3], delta, search.select_prob);
        try {
            PointEvaluation eval = evaluate_point(ensemble, params, convention);
            if (eval.validation_failed) {
                return std::nullopt;
            }
            return OptimumPoint{ensemble, std::move(eval)};
        } catch (const DegenerateDenominator&) {
            return std::nullopt;
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
    }
};

struct BestTracker {
    std::optional<OptimumPoint> best;
    Intensities best_iv{};

    bool offer(const Intensities& iv, std::optional<OptimumPoint> candidate) {
        if (!candidate) {
            return false;
        }
        if (!best || candidate->eval.result.rate > best->eval.result.rate) {
            best = std::move(candidate);
            best_iv = iv;
            return true;
        }
        return false;
    }
};

void coordinate_descent(const Objective& obj, Intensities start,
                        BestTracker& tracker) {
    const Intensities iv = obj.quantize(obj.clamp_feasible(start));

    BestTracker local;
    local.offer(iv, obj.evaluate(iv));
    if (!local.best) {
        return;  // start infeasible; other starts may do better
    }

    double window = 1.0;
    for (int round = 0; round < obj.search.refine_rounds; ++round) {
        for (int pass = 0; pass < 2; ++pass) {
            bool improved = false;
            for (int coord = 0; coord < 4; ++coord) {
                auto [lo, hi] = obj.coordinate_interval(coord, local.best_iv);
                if (!(lo <= hi)) {
                    continue;
                }
                const double span = (hi - lo) * window;
                double scan_lo =
                    std::max(lo, local.best_iv[coord] - 0.5 * span);
                double scan_hi = std::min(hi, scan_lo + span);
                scan_lo = std::max(lo, scan_hi - span);
                const int res = obj.search.grid_resolution;
                for (int j = 0; j < res; ++j) {
                    Intensities candidate = local.best_iv;
                    candidate[coord] =
                        scan_lo + (scan_hi - scan_lo) * j / (res - 1);
                    candidate = obj.quantize(candidate);
                    if (local.offer(candidate, obj.evaluate(candidate))) {
                        improved = true;
                    }
                }
            }
            if (!improved) {
                break;
            }
        }
        window *= 0.25;
    }
    tracker.offer(local.best_iv, std::move(local.best));
}

constexpr std::array<Intensities, 4> kCanonicalStarts{{
    {0.5, 0.1, 0.05, 0.01},
    {0.7, 0.2, 0.02, 0.002},
    {0.3, 0.08, 0.01, 0.001},
    {0.6, 0.05, 0.005, 0.0005},
}};

}  // namespace

OptimumPoint optimize_intensities(const ChannelParams& params, double delta,
                                  const SearchConfig& search,
                                  RateConvention convention,
                                  std::span<const Intensities> extra_starts) {
    validate(params);
    validate(search);
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw std::domain_error("optimize_intensities: delta outside [0, 1)");
    }

    const Objective obj{params, delta, search, convention};
    BestTracker tracker;

    for (const Intensities& start : extra_starts) {
        coordinate_descent(obj, start, tracker);
    }
    for (const Intensities& start : kCanonicalStarts) {
        coordinate_descent(obj, start, tracker);
    }
    Rng rng(search.seed);
    for (int i = 0; i < search.multistart; ++i) {
        const Intensities start{
            rng.uniform(search.mu_lo, search.mu_hi),
            rng.uniform(search.nu1_lo, search.nu1_hi),
            rng.uniform(search.nu2_lo, search.nu1_hi / 2.0),
            rng.uniform(search.nu3_lo, search.nu1_hi / 10.0)};
        coordinate_descent(obj, start, tracker);
    }

    if (!tracker.best || !tracker.best->eval.result.feasible) {
        throw NoFeasiblePoint(
            "no admissible intensity choice achieves a positive rate");
    }
    return std::move(*tracker.best);
}

std::vector<double> ZRange::values() const {
    if (!(step > 0.0)) {
        throw std::domain_error("z range step must be > 0");
    }
    if (stop < start) {
        throw std::domain_error("z range stop must be >= start");
    }
    std::vector<double> out;
    // half-step tolerance keeps the endpoint despite accumulated rounding
    for (double z = start; z <= stop + 0.5 * step; z += step) {
        out.push_back(quantize_sig12(z));
    }
    return out;
}

namespace {

SweepRecord make_record(int train_len, double delta, double z,
                        const std::optional<OptimumPoint>& point) {
    SweepRecord rec;
    rec.z_km = z;
    rec.train_len = train_len;
    rec.delta = delta;
    if (point) {
        const SourceEnsemble& e = point->ensemble;
        rec.intensities = {e.signal.intensity, e.decoy1.intensity,
                           e.decoy2.intensity, e.decoy3.intensity};
        rec.gain_signal = point->eval.observed.gain_of(SourceId::signal);
        rec.qber_signal = point->eval.observed.qber_of(SourceId::signal);
        rec.yields = point->eval.result.q_bounds;
        rec.rate = point->eval.result.rate;
        rec.feasible = point->eval.result.feasible;
    }
    return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepPlan& plan) {
    validate(plan.search);
    if (plan.train_lens.empty() || plan.z_values.empty()) {
        throw std::domain_error("sweep requires non-empty L and z lists");
    }

    // Descending deltas with the delta = 0 baseline always present.
    std::vector<double> deltas = plan.deltas;
    deltas.push_back(0.0);
    std::sort(deltas.begin(), deltas.end(), std::greater<>());
    deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
    for (double d : deltas) {
        if (!(d >= 0.0 && d < 1.0)) {
            throw std::domain_error("sweep delta outside [0, 1)");
        }
    }
    const bool emit_zero =
        plan.deltas.end() !=
        std::find(plan.deltas.begin(), plan.deltas.end(), 0.0);

    std::vector<SweepRecord> records;
    for (int train_len : plan.train_lens) {
        // Last optimum per delta along the z axis, used as a warm start.
        std::map<double, Intensities> warm;
        for (double z : plan.z_values) {
            const ChannelParams params = plan.channel.at(train_len, z);
            std::vector<SweepRecord> at_z;
            std::vector<Intensities> found_here;
            std::optional<double> base_rate;
            for (double delta : deltas) {
                std::optional<OptimumPoint> point;
                if (plan.fixed_intensities) {
                    const Intensities& iv = *plan.fixed_intensities;
                    const SourceEnsemble ensemble =
                        SourceEnsemble::with_common_delta(
                            iv[0], iv[1], iv[2], iv[3], delta,
                            plan.search.select_prob);
                    try {
                        PointEvaluation eval =
                            evaluate_point(ensemble, params, plan.convention);
                        if (eval.validation_failed) {
                            // excluded, never silently computed
                            continue;
                        }
                        point = OptimumPoint{ensemble, std::move(eval)};
                    } catch (const DegenerateDenominator&) {
                        continue;
                    } catch (const std::domain_error&) {
                        continue;
                    }
                } else {
                    std::vector<Intensities> starts = found_here;
                    if (auto it = warm.find(delta); it != warm.end()) {
                        starts.push_back(it->second);
                    }
                    try {
                        point = optimize_intensities(params, delta, plan.search,
                                                     plan.convention, starts);
                    } catch (const NoFeasiblePoint&) {
                    }
                    if (point) {
                        const SourceEnsemble& e = point->ensemble;
                        const Intensities iv{
                            e.signal.intensity, e.decoy1.intensity,
                            e.decoy2.intensity, e.decoy3.intensity};
                        found_here.push_back(iv);
                        warm[delta] = iv;
                    }
                }
                if (delta == 0.0) {
                    base_rate = point ? point->eval.result.rate : 0.0;
                }
                at_z.push_back(make_record(train_len, delta, z, point));
            }
            for (SweepRecord& rec : at_z) {
                if (base_rate && *base_rate > 0.0) {
                    rec.rate_ratio = rec.rate / *base_rate;
                }
                if (rec.delta != 0.0 || emit_zero) {
                    records.push_back(std::move(rec));
                }
            }
        }
    }

    std::sort(records.begin(), records.end(),
              [](const SweepRecord& a, const SweepRecord& b) {
                  if (a.train_len != b.train_len) {
                      return a.train_len < b.train_len;
                  }
                  if (a.delta != b.delta) {
                      return a.delta < b.delta;
                  }
                  return a.z_km < b.z_km;
              });
    return records;
}

std::vector<SweepRecord> sweep_distance(const ChannelModel& channel,
                                        std::span<const int> train_lens,
                                        double delta, const ZRange& z,
                                        const SearchConfig& search,
                                        RateConvention convention) {
    SweepPlan plan;
    plan.channel = channel;
    plan.train_lens.assign(train_lens.begin(), train_lens.end());
    plan.deltas = {0.0, delta};
    plan.z_values = z.values();
    plan.search = search;
    plan.convention = convention;
    return run_sweep(plan);
}

std::vector<SweepRecord> sweep_delta(const ChannelModel& channel, int train_len,
                                     std::span<const double> deltas,
                                     std::span<const double> z_values,
                                     const SearchConfig& search,
                                     RateConvention convention) {
    SweepPlan plan;
    plan.channel = channel;
    plan.train_lens = {train_len};
    plan.deltas.assign(deltas.begin(), deltas.end());
    plan.z_values.assign(z_values.begin(), z_values.end());
    plan.search = search;
    plan.convention = convention;
    return run_sweep(plan);
}

}  // namespace rrdps
