#pragma once

#include <ostream>
#include <vector>

#include "rrdps/optimizer.hpp"

namespace rrdps {

inline constexpr const char* kSweepCsvHeader =
    "z_km,L,delta,mu,nu1,nu2,nu3,Q_mu,E_mu,Q0L,Q1L,Q2L,rate,rate_ratio,"
    "feasible";

/// Writes records in the fixed schema: floating-point fields with 12
/// significant digits, rate_ratio empty where the baseline rate is zero,
/// feasible as 1/0. Records are expected sorted by (L, delta, z_km).
void write_sweep_csv(std::ostream& out,
                     const std::vector<SweepRecord>& records);

}  // namespace rrdps
