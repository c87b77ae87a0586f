#pragma once

#include "rrdps/types.hpp"

namespace rrdps {

/// Default truncation threshold for Poisson series. Far below the 1e-6-scale
/// background counts, so truncation never dominates a result.
inline constexpr double kDefaultTailEpsilon = 1e-12;

/// Binary entropy -x*log2(x) - (1-x)*log2(1-x), with the limit convention
/// that a term vanishes when its probability argument is 0.
double binary_entropy(Probability x);

/// Poisson probability e^-x x^k / k!. Evaluated in log space for large k.
Probability poisson_pmf(int k, double intensity);

/// Smallest K such that the Poisson tail mass beyond K is below epsilon.
int poisson_cutoff(double intensity, double epsilon);

}  // namespace rrdps
