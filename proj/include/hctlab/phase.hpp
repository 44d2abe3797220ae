#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Asymptotic phase-diagram calculus on the (beta, r) square: the success
// boundary rho*(beta), region classification, discovery/separation
// exponents, FDR/Lfdr limits, per-method success boundaries, and finite-p
// boundary scans.

namespace hctlab {

enum class PhaseRegion { Fail, I, II, III };

const char* to_string(PhaseRegion region);

struct PhasePoint {
  double beta = 0.0;
  double r = 0.0;
  PhaseRegion region = PhaseRegion::Fail;
  double q_star = 0.0;
  double fdr_limit = 1.0;
  double lfdr_limit = 1.0;
  // Rate exponents of the scaled separation, clamped at zero where the
  // formula goes negative (failure region: no growth).
  double sep_exponent_ideal = 0.0;
  double sep_exponent_fdrt = 0.0;
  double sep_exponent_bonf = 0.0;
};

// Success boundary: 0 on (0,1/2]; beta - 1/2 on (1/2,3/4];
// (1 - sqrt(1-beta))^2 on (3/4,1). Throws std::domain_error outside (0,1).
double rho_star(double beta);

// Useful-feature discovery exponent: 1-beta for q <= r,
// 1-beta-(sqrt(q)-sqrt(r))^2 for q > r. Continuous at q = r.
double delta_exponent(double q, double beta, double r);

// Separation growth exponent gamma = delta - max(1-q, delta)/2, identically
// min(gamma1, gamma2) with gamma1 = delta-(1-q)/2, gamma2 = delta/2.
double gamma_exponent(double q, double beta, double r);

struct QCandidates {
  double q1 = 0.0;  // 4r
  double q2 = 0.0;  // (beta+r)^2 / 4r
};

// Throws std::domain_error for r <= 0.
QCandidates q_candidates(double beta, double r);

// Fills every PhasePoint field. Boundary points r = rho*(beta) classify as
// Fail (the asymptotic results hold on open regions). q_star is 4r for
// r <= beta/3 and (beta+r)^2/4r above; in Region III any q in [beta, r]
// ties in growth rate and the tangent-secant argument picks q2, so the
// same branch applies there. Throws std::domain_error off (0,1)^2.
PhasePoint classify(double beta, double r);

// True iff lfdr_limit == (1 + fdr_limit)/2 exactly. classify() computes
// lfdr_limit through this identity, so its output always satisfies it.
bool tangent_secant_limit_consistency(const PhasePoint& point);

enum class SelectionMethod { Ideal, HCT, FDRT, Bonferroni };

// Minimal r for asymptotic success: rho*(beta) for Ideal and HCT,
// (1 - sqrt(1-beta))^2 for FDRT and Bonferroni.
double method_success_region(SelectionMethod method, double beta);

struct BoundaryRow {
  double beta = 0.0;
  double level = 0.0;
  double r = 0.0;       // r with proxy error at the ideal HCT == level
  bool attained = false;
};

// For each beta and error level, binary-searches the r at which the proxy
// classification error of the clip classifier, thresholded at the ideal HCT
// of the matching folded mixture, equals the level (within 1e-4). Uses
// n = max(2, round(log(p)/2)). Monotonicity of the error in r is verified
// before each search; rows where no r in (0,1) attains the level come back
// with attained = false (error level 0.5 collapses to r = 0). Throws
// std::invalid_argument for p < 100 or levels outside (0, 0.5).
std::vector<BoundaryRow> finite_p_boundary(std::int64_t p,
                                           std::span<const double> error_levels,
                                           std::span<const double> beta_grid);

}  // namespace hctlab
