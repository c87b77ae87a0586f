#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "rrdps/source.hpp"
#include "rrdps/types.hpp"

namespace rrdps {

/// Detector and fiber parameters plus the train length.
struct ChannelParams {
    double dark_rate = 0.0;         // p_d, per train
    double misalignment = 0.0;      // e_d
    double background_error = 0.5;  // e_0
    double detector_eff = 1.0;      // eta_B
    double loss_coeff = 0.0;        // alpha, dB/km
    double distance = 0.0;          // z, km
    int train_len = 2;              // L
    double corr_eff = 1.0;          // f, error-correction efficiency
};

void validate(const ChannelParams& params);

/// Channel description independent of (L, z). The per-train dark rate is
/// the per-pulse rate scaled by the train length.
struct ChannelModel {
    double dark_per_pulse = 1.7e-6;
    double misalignment = 0.033;
    double background_error = 0.5;
    double detector_eff = 0.045;
    double loss_coeff = 0.2;
    double corr_eff = 1.16;

    ChannelParams at(int train_len, double distance_km) const;
};

/// Standard simulation preset: per-pulse dark rate 1.7e-6 scaled by the
/// train length, e_d = 3.3%, e_0 = 50%, eta_B = 4.5%, alpha = 0.2 dB/km,
/// f = 1.16.
ChannelModel table1_model();
ChannelParams table1_params(int train_len, double distance_km);

/// Preset lookup by name; currently only "table1".
std::optional<ChannelParams> channel_preset(std::string_view name,
                                            int train_len, double distance_km);

/// Fiber survival probability 10^(-alpha z / 10).
Probability transmittance(const ChannelParams& params);

/// Overall count rate 1 - (1 - p_d) exp(-x eta_t eta_B).
Probability gain(double intensity, const ChannelParams& params);

/// Overall QBER [e_d (1-p_d)(1 - exp(-x eta)) + e_0 p_d] / gain(x).
Probability qber(double intensity, const ChannelParams& params);

/// Per-photon-number yield 1 - (1 - p_d)(1 - eta)^k, consistent with gain
/// under Poisson averaging.
Probability yield_k(int k, const ChannelParams& params);

/// Directly measurable statistics per source: overall gains and QBERs.
struct ObservedStats {
    std::array<double, 4> gain{};
    std::array<double, 4> qber{};

    double gain_of(SourceId id) const { return gain[static_cast<int>(id)]; }
    double qber_of(SourceId id) const { return qber[static_cast<int>(id)]; }
};

/// Gains and QBERs evaluated at the nominal intensities of the ensemble.
ObservedStats observe(const SourceEnsemble& ensemble,
                      const ChannelParams& params);

}  // namespace rrdps
