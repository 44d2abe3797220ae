#include "hctlab/threshold.hpp"

#include <cmath>
#include <stdexcept>

#include "hctlab/normal.hpp"

namespace hctlab {

const char* to_string(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::Clip: return "clip";
    case ThresholdKind::Hard: return "hard";
    case ThresholdKind::Soft: return "soft";
  }
  return "?";
}

std::optional<ThresholdKind> threshold_kind_from_string(std::string_view name) {
  if (name == "clip") return ThresholdKind::Clip;
  if (name == "hard") return ThresholdKind::Hard;
  if (name == "soft") return ThresholdKind::Soft;
  return std::nullopt;
}

double apply_threshold(ThresholdKind kind, double t, double z) {
  const double az = std::fabs(z);
  const double sign = z > 0 ? 1.0 : (z < 0 ? -1.0 : 0.0);
  switch (kind) {
    case ThresholdKind::Clip: return az > t ? sign : 0.0;
    case ThresholdKind::Hard: return az > t ? z : 0.0;
    case ThresholdKind::Soft: return az > t ? sign * (az - t) : 0.0;
  }
  return 0.0;
}

// Closed forms documented in the header; sf_a/sf_b are the upper/lower
// selection probabilities P(Z > t) and P(Z < -t).
double threshold_moment(ThresholdKind kind, double t, double mu, int order) {
  if (t < 0.0) throw std::domain_error("threshold_moment: t must be >= 0");
  if (order != 1 && order != 2)
    throw std::domain_error("threshold_moment: order must be 1 or 2");
  const double a = t - mu;
  const double b = t + mu;
  const double sf_a = norm_sf(a);
  const double sf_b = norm_sf(b);
  const double pdf_a = norm_pdf(a);
  const double pdf_b = norm_pdf(b);
  switch (kind) {
    case ThresholdKind::Clip:
      return order == 1 ? sf_a - sf_b : sf_a + sf_b;
    case ThresholdKind::Hard:
      if (order == 1) return mu * (sf_a + sf_b) + pdf_a - pdf_b;
      return (1.0 + mu * mu) * (sf_a + sf_b) + (t + mu) * pdf_a +
             (t - mu) * pdf_b;
    case ThresholdKind::Soft:
      if (order == 1) return (mu - t) * sf_a + pdf_a + (mu + t) * sf_b - pdf_b;
      return (1.0 + a * a) * sf_a - a * pdf_a + (1.0 + b * b) * sf_b -
             b * pdf_b;
  }
  return 0.0;
}

}  // namespace hctlab
