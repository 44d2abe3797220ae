#include "hctlab/hc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hctlab/normal.hpp"
#include "hctlab/optimize.hpp"

namespace hctlab {

namespace {

// Objective without the contract checks; the scan feeds it p-values that may
// equal 1 (z = 0), where the value is finite and negative.
double hc_value_unchecked(std::int64_t i, std::int64_t n_values, double p) {
  const double frac = static_cast<double>(i) / static_cast<double>(n_values);
  return std::sqrt(static_cast<double>(n_values)) * (frac - p) /
         std::sqrt(frac * (1.0 - frac));
}

}  // namespace

double hc_objective(std::int64_t i, std::int64_t n_values, double p_value) {
  if (i < 1 || i >= n_values)
    throw std::domain_error("hc_objective: need 1 <= i < N");
  if (!(p_value > 0.0 && p_value < 1.0))
    throw std::domain_error("hc_objective: p_value must lie in (0,1)");
  return hc_value_unchecked(i, n_values, p_value);
}

std::vector<double> p_values_from_z(std::span<const double> z) {
  std::vector<double> out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double p = 2.0 * norm_sf(std::fabs(z[j]));
    out[j] = p > 0.0 ? p : std::numeric_limits<double>::denorm_min();
  }
  return out;
}

HcScanResult hct_empirical(std::span<const double> z, double alpha0) {
  const auto n_values = static_cast<std::int64_t>(z.size());
  if (n_values < 2)
    throw std::invalid_argument("hct_empirical: need at least two z-scores");
  if (!(alpha0 > 0.0 && alpha0 <= 1.0))
    throw std::invalid_argument("hct_empirical: alpha0 must lie in (0,1]");

  // |z| descending <=> p-values ascending.
  std::vector<double> abs_z(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) abs_z[j] = std::fabs(z[j]);
  std::sort(abs_z.begin(), abs_z.end(), std::greater<>());

  const std::int64_t from_alpha = static_cast<std::int64_t>(
      std::floor(alpha0 * static_cast<double>(n_values)));
  const std::int64_t i_max =
      std::min<std::int64_t>(n_values - 1, std::max<std::int64_t>(1, from_alpha));

  HcScanResult result;
  result.trace.reserve(static_cast<std::size_t>(i_max));
  result.objective_max = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 1; i <= i_max; ++i) {
    const double p = 2.0 * norm_sf(abs_z[static_cast<std::size_t>(i - 1)]);
    const double safe_p =
        p > 0.0 ? p : std::numeric_limits<double>::denorm_min();
    const double value = hc_value_unchecked(i, n_values, safe_p);
    result.trace.push_back({i, safe_p, value});
    if (value > result.objective_max) {  // strict: ties keep the smallest i
      result.objective_max = value;
      result.argmax_index = i;
    }
  }
  result.threshold = abs_z[static_cast<std::size_t>(result.argmax_index - 1)];
  return result;
}

double hc_ideal_objective(const FoldedMixture& m, double t) {
  const double signal_excess =
      m.epsilon * (folded_normal_sf(m.tau, t) - folded_normal_sf(0.0, t));
  const double surv = m.survival(t);
  const double denom = std::sqrt((1.0 - surv) * surv);
  if (!(denom > 0.0)) return 0.0;
  return signal_excess / denom;
}

double hct_ideal(const FoldedMixture& m, double t0) {
  if (!(m.epsilon > 0.0))
    throw std::domain_error(
        "hct_ideal: degenerate at epsilon == 0 (pure-null mixture)");
  if (!std::isfinite(t0) || t0 < 0.0)
    throw std::domain_error("hct_ideal: t0 must be finite and >= 0");
  const double t_max = m.tau + 6.0;
  if (t0 >= t_max)
    throw std::domain_error("hct_ideal: t0 must sit below tau + 6");
  auto objective = [&m](double t) { return hc_ideal_objective(m, t); };
  return maximize_scan(objective, t0, t_max, 1e-3, 1e-9).arg;
}

}  // namespace hctlab
