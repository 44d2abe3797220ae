#include "hctlab/phase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hctlab/hc.hpp"
#include "hctlab/ideal.hpp"
#include "hctlab/normal.hpp"
#include "hctlab/parallel.hpp"
#include "hctlab/params.hpp"

namespace hctlab {

const char* to_string(PhaseRegion region) {
  switch (region) {
    case PhaseRegion::Fail: return "Fail";
    case PhaseRegion::I: return "I";
    case PhaseRegion::II: return "II";
    case PhaseRegion::III: return "III";
  }
  return "?";
}

double rho_star(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("rho_star: beta must lie in (0,1)");
  if (beta <= 0.5) return 0.0;
  if (beta <= 0.75) return beta - 0.5;
  const double root = 1.0 - std::sqrt(1.0 - beta);
  return root * root;
}

double delta_exponent(double q, double beta, double r) {
  if (q <= r) return 1.0 - beta;
  const double gap = std::sqrt(q) - std::sqrt(r);
  return 1.0 - beta - gap * gap;
}

double gamma_exponent(double q, double beta, double r) {
  const double delta = delta_exponent(q, beta, r);
  return delta - std::max(1.0 - q, delta) / 2.0;
}

QCandidates q_candidates(double beta, double r) {
  if (!(r > 0.0)) throw std::domain_error("q_candidates: r must be > 0");
  const double sum = beta + r;
  return QCandidates{4.0 * r, sum * sum / (4.0 * r)};
}

PhasePoint classify(double beta, double r) {
  if (!(beta > 0.0 && beta < 1.0) || !(r > 0.0 && r < 1.0))
    throw std::domain_error("classify: (beta, r) must lie in (0,1)^2");

  PhasePoint pt;
  pt.beta = beta;
  pt.r = r;

  const double boundary = rho_star(beta);
  if (r <= boundary)
    pt.region = PhaseRegion::Fail;
  else if (r <= beta / 3.0)
    pt.region = PhaseRegion::I;
  else if (r <= beta)
    pt.region = PhaseRegion::II;
  else
    pt.region = PhaseRegion::III;

  const QCandidates q = q_candidates(beta, r);
  pt.q_star = (r <= beta / 3.0) ? q.q1 : q.q2;

  switch (pt.region) {
    case PhaseRegion::Fail:  // no asymptotic limit applies below the
    case PhaseRegion::I:     // boundary; Fail adopts the Region-I values
      pt.fdr_limit = 1.0;
      break;
    case PhaseRegion::II:
      pt.fdr_limit = (beta - r) / (2.0 * r);
      break;
    case PhaseRegion::III:
      pt.fdr_limit = 0.0;
      break;
  }
  // Computed through the tangent-secant identity so that
  // tangent_secant_limit_consistency holds exactly; in Region II this equals
  // the (r+beta)/(4r) closed form.
  pt.lfdr_limit = 0.5 * (1.0 + pt.fdr_limit);

  // Growth exponents, clamped at zero: a negative rate means the scaled
  // separation decays and the method fails, displayed as zero growth. The
  // Bonferroni entry is gamma(1) = delta(1)/2 on the success side; tables
  // sometimes print the unhalved delta(1) = -beta - r + 2*sqrt(r), which has
  // the same sign, so the success boundary is unaffected.
  pt.sep_exponent_ideal = std::max(0.0, gamma_exponent(pt.q_star, beta, r));
  pt.sep_exponent_fdrt =
      std::max(0.0, 0.5 - (beta + r) * (beta + r) / (8.0 * r));
  pt.sep_exponent_bonf = std::max(0.0, gamma_exponent(1.0, beta, r));
  return pt;
}

bool tangent_secant_limit_consistency(const PhasePoint& point) {
  return point.lfdr_limit == 0.5 * (1.0 + point.fdr_limit);
}

double method_success_region(SelectionMethod method, double beta) {
  switch (method) {
    case SelectionMethod::Ideal:
    case SelectionMethod::HCT:
      return rho_star(beta);
    case SelectionMethod::FDRT:
    case SelectionMethod::Bonferroni: {
      if (!(beta > 0.0 && beta < 1.0))
        throw std::domain_error("method_success_region: beta must lie in (0,1)");
      const double root = 1.0 - std::sqrt(1.0 - beta);
      return root * root;
    }
  }
  throw std::domain_error("method_success_region: unknown method");
}

namespace {

// Proxy error of the clip classifier thresholded at the ideal HCT of the
// matching folded mixture.
double boundary_err(double beta, double r, std::int64_t p) {
  const ArwParams arw{beta, r, p};
  const RwParams params = arw.to_rw();
  const double t = hct_ideal(FoldedMixture{params.epsilon, params.tau});
  return err_proxy(params, ThresholdKind::Clip, t);
}

BoundaryRow solve_level(double beta, double level, std::int64_t p) {
  BoundaryRow row{beta, level, 0.0, false};
  const double r_lo = 1e-6;
  const double r_hi = 1.0 - 1e-6;

  // Coarse monotonicity check (error must fall as strength grows) before
  // trusting bisection.
  const double err_lo = boundary_err(beta, r_lo, p);
  const double err_hi = boundary_err(beta, r_hi, p);
  double prev = err_lo;
  for (double rr : {0.25, 0.5, 0.75}) {
    const double cur = boundary_err(beta, rr, p);
    if (cur > prev + 1e-6)
      throw std::logic_error("finite_p_boundary: error not decreasing in r");
    prev = cur;
  }
  if (err_hi > prev + 1e-6)
    throw std::logic_error("finite_p_boundary: error not decreasing in r");
  if (err_lo < level) {
    // Even a vanishing r beats the level; the boundary collapses to 0.
    row.r = 0.0;
    row.attained = true;
    return row;
  }
  if (err_hi > level) return row;  // out of range in (0,1)

  double lo = r_lo;
  double hi = r_hi;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (boundary_err(beta, mid, p) > level)
      lo = mid;
    else
      hi = mid;
  }
  row.r = 0.5 * (lo + hi);
  row.attained = std::fabs(boundary_err(beta, row.r, p) - level) <= 1e-4;
  return row;
}

}  // namespace

std::vector<BoundaryRow> finite_p_boundary(std::int64_t p,
                                           std::span<const double> error_levels,
                                           std::span<const double> beta_grid) {
  if (p < 100) throw std::invalid_argument("finite_p_boundary: p must be >= 100");
  for (double level : error_levels)
    if (!(level > 0.0 && level < 0.5))
      throw std::invalid_argument(
          "finite_p_boundary: levels must lie in (0, 0.5)");
  for (double beta : beta_grid)
    if (!(beta > 0.0 && beta < 1.0))
      throw std::invalid_argument(
          "finite_p_boundary: beta grid must lie in (0,1)");

  std::vector<BoundaryRow> rows(error_levels.size() * beta_grid.size());
  parallel_for(static_cast<std::int64_t>(rows.size()), [&](std::int64_t idx) {
    const auto level_idx = static_cast<std::size_t>(idx) / beta_grid.size();
    const auto beta_idx = static_cast<std::size_t>(idx) % beta_grid.size();
    rows[static_cast<std::size_t>(idx)] =
        solve_level(beta_grid[beta_idx], error_levels[level_idx], p);
  });
  return rows;
}

}  // namespace hctlab
