#include "hctlab/folded.hpp"

#include <stdexcept>

#include "hctlab/normal.hpp"

namespace hctlab {

namespace {

void require_nonnegative(double t) {
  if (t < 0.0) throw std::domain_error("folded law: t must be >= 0");
}

}  // namespace

double folded_normal_sf(double mu, double t) {
  require_nonnegative(t);
  return norm_sf(t - mu) + norm_sf(t + mu);
}

double FoldedMixture::cdf(double t) const {
  require_nonnegative(t);
  const double null_part = norm_cdf(t) - norm_cdf(-t);
  const double signal_part = norm_cdf(t - tau) - norm_cdf(-t - tau);
  return (1.0 - epsilon) * null_part + epsilon * signal_part;
}

double FoldedMixture::survival(double t) const {
  require_nonnegative(t);
  return (1.0 - epsilon) * folded_normal_sf(0.0, t) +
         epsilon * folded_normal_sf(tau, t);
}

double FoldedMixture::density(double t) const {
  require_nonnegative(t);
  return (1.0 - epsilon) * 2.0 * norm_pdf(t) +
         epsilon * (norm_pdf(t - tau) + norm_pdf(t + tau));
}

}  // namespace hctlab
