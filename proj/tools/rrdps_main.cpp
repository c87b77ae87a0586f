// Command-line front end: keyrate, sweep, optimize, verify.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rrdps/csv.hpp"
#include "rrdps/format.hpp"
#include "rrdps/keyrate.hpp"
#include "rrdps/optimizer.hpp"
#include "rrdps/oracle.hpp"
#include "rrdps/rng.hpp"

namespace {

using namespace rrdps;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitValidation = 2;
constexpr int kExitConfig = 3;

struct ChannelOptions {
    std::string preset = "table1";
    std::optional<double> dark_per_pulse;
    std::optional<double> misalignment;
    std::optional<double> background_error;
    std::optional<double> detector_eff;
    std::optional<double> loss_coeff;
    std::optional<double> corr_eff;

    ChannelModel model() const {
        std::optional<ChannelModel> base;
        if (preset == "table1") {
            base = table1_model();
        }
        if (!base) {
            throw CLI::ValidationError("--preset",
                                       "unknown channel preset: " + preset);
        }
        ChannelModel m = *base;
        if (dark_per_pulse) m.dark_per_pulse = *dark_per_pulse;
        if (misalignment) m.misalignment = *misalignment;
        if (background_error) m.background_error = *background_error;
        if (detector_eff) m.detector_eff = *detector_eff;
        if (loss_coeff) m.loss_coeff = *loss_coeff;
        if (corr_eff) m.corr_eff = *corr_eff;
        return m;
    }
};

void add_channel_options(CLI::App* cmd, ChannelOptions& opts) {
    cmd->add_option("--preset", opts.preset,
                    "Named channel parameter set (table1)")
        ->capture_default_str();
    cmd->add_option("--dark-per-pulse", opts.dark_per_pulse,
                    "Per-pulse dark rate (scaled by L)");
    cmd->add_option("--misalignment", opts.misalignment,
                    "Misalignment error probability e_d");
    cmd->add_option("--background-error", opts.background_error,
                    "Background error probability e_0");
    cmd->add_option("--detector-eff", opts.detector_eff,
                    "Detector efficiency eta_B");
    cmd->add_option("--loss-coeff", opts.loss_coeff,
                    "Fiber loss coefficient alpha [dB/km]");
    cmd->add_option("--corr-eff", opts.corr_eff,
                    "Error-correction efficiency f");
}

void add_search_options(CLI::App* cmd, SearchConfig& search) {
    cmd->add_option("--grid-resolution", search.grid_resolution,
                    "Candidates per coordinate scan")
        ->capture_default_str()
        ->check(CLI::Range(4, 1000));
    cmd->add_option("--refine-rounds", search.refine_rounds,
                    "Grid refinement rounds")
        ->capture_default_str()
        ->check(CLI::Range(1, 20));
    cmd->add_option("--multistart", search.multistart,
                    "Seeded random starts")
        ->capture_default_str()
        ->check(CLI::Range(0, 64));
    cmd->add_option("--seed", search.seed, "Root seed")->capture_default_str();
}

Intensities to_intensities(const std::vector<double>& values,
                           const char* flag) {
    if (values.size() != 4) {
        throw CLI::ValidationError(
            flag, "expected exactly four values mu,nu1,nu2,nu3");
    }
    return {values[0], values[1], values[2], values[3]};
}

RateConvention to_convention(const std::string& name) {
    const auto c = parse_convention(name);
    if (!c) {
        throw CLI::ValidationError("--rate-scope", "expected eq1 or eq2");
    }
    return *c;
}

ZRange parse_z_range(const std::string& text) {
    ZRange r;
    char trailing = '\0';
    const int got = std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &r.start,
                                &r.stop, &r.step, &trailing);
    if (got != 3) {
        throw CLI::ValidationError("--z-range", "expected start:stop:step");
    }
    if (!(r.step > 0.0) || r.stop < r.start || r.start < 0.0) {
        throw CLI::ValidationError(
            "--z-range", "requires 0 <= start <= stop and step > 0");
    }
    return r;
}

void print_point_report(const std::string& heading, double z, int train_len,
                        double delta, RateConvention convention,
                        const PointEvaluation& eval) {
    const auto& r = eval.result;
    std::cout << heading << '\n'
              << "  z_km        = " << format_sig12(z) << '\n'
              << "  L           = " << train_len << '\n'
              << "  delta       = " << format_sig12(delta) << '\n'
              << "  rate_scope  = " << convention_name(convention) << '\n'
              << "  intensities = " << format_sig12(eval.ensemble.signal.intensity)
              << ',' << format_sig12(eval.ensemble.decoy1.intensity) << ','
              << format_sig12(eval.ensemble.decoy2.intensity) << ','
              << format_sig12(eval.ensemble.decoy3.intensity) << '\n'
              << "  Q_mu        = "
              << format_sig12(eval.observed.gain_of(SourceId::signal)) << '\n'
              << "  E_mu        = "
              << format_sig12(eval.observed.qber_of(SourceId::signal)) << '\n'
              << "  Q0L,Q1L,Q2L = " << format_sig12(r.q_bounds.q0_lower) << ','
              << format_sig12(r.q_bounds.q1_lower) << ','
              << format_sig12(r.q_bounds.q2_lower) << '\n'
              << "  e_ph(0,1,2) = " << format_sig12(r.phase_errors[0]) << ','
              << format_sig12(r.phase_errors[1]) << ','
              << format_sig12(r.phase_errors[2]) << '\n'
              << "  ec_cost     = " << format_sig12(r.ec_cost) << '\n'
              << "  rate        = " << format_sig12(r.rate) << '\n'
              << "  feasible    = " << (r.feasible ? "yes" : "no") << '\n'
              << "  conditions  = "
              << (eval.validation_failed
                      ? "FAIL: " + r.diagnostics.first_violation
                      : "pass")
              << '\n';
}

struct PointArgs {
    ChannelOptions channel;
    int train_len = 16;
    double delta = 0.0;
    double z = 0.0;
    std::vector<double> fixed = {0.5, 0.1, 0.05, 0.01};
    bool optimize = false;
    std::string rate_scope = "eq1";
    SearchConfig search;
};

int run_point(const PointArgs& args, bool force_optimize,
              const char* heading) {
    const ChannelModel model = args.channel.model();
    const ChannelParams params = model.at(args.train_len, args.z);
    const RateConvention convention = to_convention(args.rate_scope);
    const bool optimize = force_optimize || args.optimize;

    PointEvaluation eval;
    try {
        if (optimize) {
            OptimumPoint opt = optimize_intensities(params, args.delta,
                                                    args.search, convention);
            eval = std::move(opt.eval);
        } else {
            const Intensities iv =
                to_intensities(args.fixed, "--fixed-intensities");
            const SourceEnsemble ensemble = SourceEnsemble::with_common_delta(
                iv[0], iv[1], iv[2], iv[3], args.delta,
                args.search.select_prob);
            eval = evaluate_point(ensemble, params, convention);
        }
    } catch (const NoFeasiblePoint& err) {
        std::cout << heading << '\n'
                  << "  infeasible  = " << err.what() << '\n';
        return kExitInfeasible;
    } catch (const DegenerateDenominator& err) {
        std::cout << heading << '\n'
                  << "  validation  = FAIL: " << err.what() << '\n';
        return kExitValidation;
    }

    print_point_report(heading, args.z, args.train_len, args.delta, convention,
                       eval);
    if (eval.validation_failed) {
        return kExitValidation;
    }
    return eval.result.feasible ? kExitOk : kExitInfeasible;
}

void add_point_options(CLI::App* cmd, PointArgs& args, bool with_mode_flags) {
    add_channel_options(cmd, args.channel);
    cmd->add_option("--L", args.train_len, "Pulse-train length")
        ->capture_default_str()
        ->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--delta", args.delta, "Relative intensity deviation")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 0.999));
    cmd->add_option("--z", args.z, "Transmission distance [km]")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    if (with_mode_flags) {
        auto* fixed = cmd->add_option("--fixed-intensities", args.fixed,
                                      "mu,nu1,nu2,nu3")
                          ->delimiter(',')
                          ->expected(0, 4);
        cmd->add_flag("--optimize", args.optimize,
                      "Optimize intensities instead of using fixed ones")
            ->excludes(fixed);
    }
    cmd->add_option("--rate-scope", args.rate_scope,
                    "1/L scope on the error-correction term: eq1 or eq2")
        ->capture_default_str()
        ->check(CLI::IsMember({"eq1", "eq2"}));
    add_search_options(cmd, args.search);
}

struct SweepArgs {
    ChannelOptions channel;
    std::vector<int> train_lens = {16};
    std::vector<double> deltas = {0.05};
    std::string z_range;
    std::vector<double> z_values;
    std::vector<double> fixed;
    std::string rate_scope = "eq1";
    std::string out_path = "sweep.csv";
    SearchConfig search;
};

int run_sweep_cmd(const SweepArgs& args) {
    SweepPlan plan;
    plan.channel = args.channel.model();
    plan.train_lens = args.train_lens;
    plan.deltas = args.deltas;
    if (!args.z_range.empty()) {
        plan.z_values = parse_z_range(args.z_range).values();
    } else {
        plan.z_values = args.z_values;
    }
    if (plan.z_values.empty()) {
        throw CLI::ValidationError("--z-range",
                                   "sweep requires --z-range or --z");
    }
    if (!args.fixed.empty()) {
        plan.fixed_intensities = to_intensities(args.fixed,
                                                "--fixed-intensities");
    }
    plan.search = args.search;
    plan.convention = to_convention(args.rate_scope);

    const std::vector<SweepRecord> records = run_sweep(plan);

    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << args.out_path << '\n';
        return kExitConfig;
    }
    write_sweep_csv(out, records);
    if (!out.good()) {
        std::cerr << "write failed: " << args.out_path << '\n';
        return kExitConfig;
    }
    std::size_t feasible = 0;
    for (const SweepRecord& r : records) {
        feasible += r.feasible ? 1 : 0;
    }
    std::cout << "sweep: " << records.size() << " records ("
              << feasible << " feasible) -> " << args.out_path << '\n';
    return kExitOk;
}

struct VerifyArgs {
    ChannelOptions channel;
    int train_len = 16;
    std::vector<double> deltas = {0.02, 0.05, 0.08};
    std::vector<double> z_values = {0.0, 15.0, 30.0, 60.0};
    std::vector<double> fixed = {0.5, 0.1, 0.05, 0.01};
    int patterns = 100;
    int pattern_len = 256;
    std::uint64_t seed = 7;
    bool mutate = false;
};

int run_verify(const VerifyArgs& args) {
    const ChannelModel model = args.channel.model();
    const Intensities iv = to_intensities(args.fixed, "--fixed-intensities");

    VerifyOptions options;
    options.corrupt_q1 = args.mutate;

    Rng root(args.seed);
    std::size_t case_no = 0;
    std::size_t failures = 0;
    double worst = std::numeric_limits<double>::infinity();

    for (double delta : args.deltas) {
        const SourceEnsemble ensemble = SourceEnsemble::with_common_delta(
            iv[0], iv[1], iv[2], iv[3], delta);
        const int cutoff = default_cutoff(ensemble);
        for (double z : args.z_values) {
            const ChannelParams params = model.at(args.train_len, z);
            std::vector<ErrorPattern> patterns;
            const std::size_t n = static_cast<std::size_t>(args.pattern_len);
            patterns.push_back(ErrorPattern::constant_low(delta, n));
            patterns.push_back(ErrorPattern::constant_high(delta, n));
            patterns.push_back(ErrorPattern::alternating(delta, n));
            patterns.push_back(ErrorPattern::sinusoidal(delta, n));
            for (int i = 0; i < args.patterns; ++i) {
                patterns.push_back(
                    ErrorPattern::seeded_random(delta, n, root.next_u64()));
            }
            for (const ErrorPattern& pattern : patterns) {
                ++case_no;
                const VerifyReport report =
                    verify_bounds(pattern, ensemble, params, cutoff, options);
                if (report.worst_margin < worst) {
                    worst = report.worst_margin;
                }
                std::cout << "case " << case_no << " kind="
                          << pattern_kind_name(pattern.kind)
                          << " delta=" << format_sig12(delta)
                          << " z=" << format_sig12(z) << " L=" << args.train_len
                          << ": " << (report.pass ? "PASS" : "FAIL")
                          << " margin=" << format_sig12(report.worst_margin);
                if (!report.pass) {
                    std::cout << " (" << report.detail << ")";
                    ++failures;
                }
                std::cout << '\n';
            }
        }
    }
    std::cout << "verify: " << (case_no - failures) << "/" << case_no
              << " passed, worst margin = " << format_sig12(worst) << '\n';
    return failures == 0 ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Secure key rate of four-intensity decoy-state RRDPS-QKD with "
        "bounded source intensity errors"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file");
    app.get_config_formatter_base()->comment('#');

    PointArgs keyrate_args;
    CLI::App* keyrate_cmd = app.add_subcommand(
        "keyrate", "Key rate at a single (L, delta, z) point");
    keyrate_cmd->fallthrough();
    add_point_options(keyrate_cmd, keyrate_args, true);

    PointArgs optimize_args;
    CLI::App* optimize_cmd = app.add_subcommand(
        "optimize", "Best intensities and rate at a single point");
    optimize_cmd->fallthrough();
    add_point_options(optimize_cmd, optimize_args, false);

    SweepArgs sweep_args;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Parameter sweep emitting CSV");
    sweep_cmd->fallthrough();
    add_channel_options(sweep_cmd, sweep_args.channel);
    sweep_cmd->add_option("--L", sweep_args.train_lens, "Pulse-train lengths")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--delta", sweep_args.deltas,
                          "Relative intensity deviations")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--z-range", sweep_args.z_range,
                          "Distance range start:stop:step [km]");
    sweep_cmd->add_option("--z", sweep_args.z_values, "Distance list [km]")
        ->delimiter(',');
    sweep_cmd->add_option("--fixed-intensities", sweep_args.fixed,
                          "mu,nu1,nu2,nu3 (optimized when omitted)")
        ->delimiter(',')
        ->expected(0, 4);
    sweep_cmd->add_option("--rate-scope", sweep_args.rate_scope,
                          "eq1 or eq2")
        ->capture_default_str()
        ->check(CLI::IsMember({"eq1", "eq2"}));
    sweep_cmd->add_option("--out", sweep_args.out_path, "Output CSV path")
        ->capture_default_str();
    add_search_options(sweep_cmd, sweep_args.search);

    VerifyArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Soundness suite: estimator bounds vs exact expectations");
    verify_cmd->fallthrough();
    add_channel_options(verify_cmd, verify_args.channel);
    verify_cmd->add_option("--L", verify_args.train_len, "Pulse-train length")
        ->capture_default_str()
        ->check(CLI::Range(2, 1 << 20));
    verify_cmd->add_option("--delta", verify_args.deltas,
                           "Relative intensity deviations")
        ->delimiter(',')
        ->capture_default_str();
    verify_cmd->add_option("--z", verify_args.z_values, "Distance list [km]")
        ->delimiter(',')
        ->capture_default_str();
    verify_cmd->add_option("--fixed-intensities", verify_args.fixed,
                           "mu,nu1,nu2,nu3")
        ->delimiter(',')
        ->expected(0, 4);
    verify_cmd->add_option("--patterns", verify_args.patterns,
                           "Seeded-random patterns per (delta, z)")
        ->capture_default_str()
        ->check(CLI::Range(0, 1000000));
    verify_cmd->add_option("--pattern-len", verify_args.pattern_len,
                           "Multipliers per pattern")
        ->capture_default_str()
        ->check(CLI::Range(1, 1 << 22));
    verify_cmd->add_option("--seed", verify_args.seed, "Root seed")
        ->capture_default_str();
    verify_cmd->add_flag("--mutate", verify_args.mutate,
                         "Negative control: corrupt a bound coefficient");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (keyrate_cmd->parsed()) {
            return run_point(keyrate_args, false, "keyrate report");
        }
        if (optimize_cmd->parsed()) {
            return run_point(optimize_args, true, "optimize report");
        }
        if (sweep_cmd->parsed()) {
            return run_sweep_cmd(sweep_args);
        }
        if (verify_cmd->parsed()) {
            return run_verify(verify_args);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
