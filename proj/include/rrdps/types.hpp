#pragma once

#include <stdexcept>
#include <string>

namespace rrdps {

/// A real number validated to lie in [0, 1]. Converts implicitly from and
/// to double so formulas stay readable; construction throws std::domain_error
/// on out-of-range values.
class Probability {
public:
    Probability(double value) : value_(value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw std::domain_error("probability out of [0, 1]: " +
                                    std::to_string(value));
        }
    }

    operator double() const { return value_; }
    double value() const { return value_; }

private:
    double value_;
};

// Identifies one of the four source states: the signal and three decoys
// in decreasing nominal intensity.
enum class SourceId { signal = 0, decoy1 = 1, decoy2 = 2, decoy3 = 3 };

inline constexpr int kNumSources = 4;

constexpr const char* source_name(SourceId id) {
    switch (id) {
    case SourceId::signal: return "mu";
    case SourceId::decoy1: return "nu1";
    case SourceId::decoy2: return "nu2";
    case SourceId::decoy3: return "nu3";
    }
    return "?";
}

/// Raised when a bound denominator is not strictly positive. Computing the
/// bound anyway would be unsound, so this is a hard error rather than a
/// clamp; it signals an inadmissible source ensemble.
class DegenerateDenominator : public std::runtime_error {
public:
    explicit DegenerateDenominator(const std::string& what)
        : std::runtime_error(what) {}
};

/// Raised by the optimizer when every candidate in the search box is
/// infeasible (e.g. the channel is beyond the cutoff distance).
class NoFeasiblePoint : public std::runtime_error {
public:
    explicit NoFeasiblePoint(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace rrdps
