#include "rrdps/channel.hpp"

#include <cmath>

namespace rrdps {

void validate(const ChannelParams& p) {
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in01(p.dark_rate) || !in01(p.misalignment) ||
        !in01(p.background_error) || !in01(p.detector_eff)) {
        throw std::domain_error("channel probabilities must lie in [0, 1]");
    }
    if (!(p.loss_coeff >= 0.0) || !(p.distance >= 0.0)) {
        throw std::domain_error("loss coefficient and distance must be >= 0");
    }
    if (p.train_len < 2) {
        throw std::domain_error("train length must be >= 2");
    }
    if (!(p.corr_eff >= 1.0)) {
        throw std::domain_error("error-correction efficiency must be >= 1");
    }
}

ChannelParams ChannelModel::at(int train_len, double distance_km) const {
    ChannelParams p;
    p.dark_rate = dark_per_pulse * train_len;
    p.misalignment = misalignment;
    p.background_error = background_error;
    p.detector_eff = detector_eff;
    p.loss_coeff = loss_coeff;
    p.distance = distance_km;
    p.train_len = train_len;
    p.corr_eff = corr_eff;
    validate(p);
    return p;
}

ChannelModel table1_model() { return ChannelModel{}; }

ChannelParams table1_params(int train_len, double distance_km) {
    return table1_model().at(train_len, distance_km);
}

std::optional<ChannelParams> channel_preset(std::string_view name,
                                            int train_len,
                                            double distance_km) {
    if (name == "table1") {
        return table1_params(train_len, distance_km);
    }
    return std::nullopt;
}

Probability transmittance(const ChannelParams& params) {
    return std::pow(10.0, -params.loss_coeff * params.distance / 10.0);
}

namespace {

double system_eta(const ChannelParams& params) {
    return transmittance(params).value() * params.detector_eff;
}

}  // namespace

Probability gain(double intensity, const ChannelParams& params) {
    if (!(intensity >= 0.0)) {
        throw std::domain_error("gain: negative intensity");
    }
    return 1.0 - (1.0 - params.dark_rate) *
                     std::exp(-intensity * system_eta(params));
}

Probability qber(double intensity, const ChannelParams& params) {
    const double q = gain(intensity, params);
    if (q == 0.0) {
        throw std::domain_error("qber undefined: gain is zero");
    }
    const double numerator =
        params.misalignment * (1.0 - params.dark_rate) *
            (1.0 - std::exp(-intensity * system_eta(params))) +
        params.background_error * params.dark_rate;
    return numerator / q;
}

Probability yield_k(int k, const ChannelParams& params) {
    if (k < 0) {
        throw std::domain_error("yield_k: negative photon number");
    }
    const double eta = system_eta(params);
    return 1.0 - (1.0 - params.dark_rate) * std::pow(1.0 - eta, k);
}

ObservedStats observe(const SourceEnsemble& ensemble,
                      const ChannelParams& params) {
    ObservedStats stats;
    for (int s = 0; s < kNumSources; ++s) {
        const double x = ensemble[static_cast<SourceId>(s)].intensity;
        stats.gain[s] = gain(x, params);
        stats.qber[s] = qber(x, params);
    }
    return stats;
}

}  // namespace rrdps
