#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hctlab/folded.hpp"

// Higher Criticism: the objective on ordered p-values, the empirical HC
// threshold on observed z-scores, and the ideal HCT functional on a folded
// mixture.

namespace hctlab {

struct HcScanEntry {
  std::int64_t index = 0;  // 1-based order-statistic index
  double p_value = 0.0;    // i-th smallest p-value
  double hc_value = 0.0;
};

struct HcScanResult {
  std::int64_t argmax_index = 0;  // 1-based
  double threshold = 0.0;         // |z| order statistic paired with the argmax
  double objective_max = 0.0;
  std::vector<HcScanEntry> trace;  // scanned range only
};

// sqrt(N) * (i/N - p) / sqrt(i/N * (1 - i/N)). Positive when the i-th order
// statistic sits below its null expectation. Throws std::domain_error for
// i < 1, i >= N (the i = N denominator vanishes) or p outside (0,1).
double hc_objective(std::int64_t i, std::int64_t n_values, double p_value);

// Two-sided p-values 2*Phi_bar(|z|), in (0,1]; survival-based, so no tail
// cancellation. Values beyond the erfc underflow point clamp to the smallest
// positive double.
std::vector<double> p_values_from_z(std::span<const double> z);

// Orders the p-values, maximizes hc_objective over
// 1 <= i <= min(N-1, max(1, floor(alpha0*N))), ties toward the smallest i,
// and returns the |z| order statistic at the argmax as the threshold. For a
// vector of zeros every p-value is 1 and the scan settles on the top of the
// range with threshold 0. Throws std::invalid_argument for N < 2 or alpha0
// outside (0,1].
HcScanResult hct_empirical(std::span<const double> z, double alpha0 = 0.10);

// Ideal HC objective at threshold t: (Gbar(t) - Psibar_0(t)) / sqrt(G*Gbar),
// with G the folded mixture cdf. The numerator is formed directly as
// eps*(Psibar_tau - Psibar_0) to avoid cancellation.
double hc_ideal_objective(const FoldedMixture& m, double t);

// Maximizer of hc_ideal_objective over (t0, tau+6]: dense grid plus
// golden-section refinement (protocol shared with the ideal-threshold
// search). t0 > 0 guards the functional's singularity as t -> 0. Throws
// std::domain_error when m.epsilon == 0, where the functional degenerates.
double hct_ideal(const FoldedMixture& m, double t0 = 0.5);

}  // namespace hctlab
