#pragma once

#include <cstdint>
#include <optional>

#include "hctlab/params.hpp"
#include "hctlab/threshold.hpp"

// Proxy separation/error functionals, expected selection rates, proxy FDR
// and local FDR, the ideal threshold, FDRT-alpha, Bonferroni, and the
// tangent-secant identity.
//
// Rate conventions (per feature): TPR(t) = eps * Psibar_tau(t),
// FPR(t) = (1-eps) * Psibar_0(t), IDR(t) = eps * Phi_bar(t + tau).
// Derivative rates are analytic phi-based magnitudes, never finite
// differences (local FDR in deep tails is cancellation-prone).

namespace hctlab {

struct Rates {
  double tpr = 0.0;
  double fpr = 0.0;
  double idr = 0.0;
  double tpr_deriv = 0.0;  // |d/dt TPR|
  double fpr_deriv = 0.0;  // |d/dt FPR|
};

struct IdealSummary {
  double threshold = 0.0;
  double sep = 0.0;
  double err = 0.5;
  double fdr = 0.0;
  double lfdr = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
  double idr = 0.0;
};

// Expected selection rates at threshold t >= 0 (throws std::domain_error for
// t < 0). Pure in epsilon/tau; p and n are not consulted.
Rates rates(const RwParams& params, double t);

// Proxy separation 2A/sqrt(B), A = eps*tau*E eta_t(tau+W),
// B = eps*E eta_t^2(tau+W) + (1-eps)*E eta_t^2(W). Empty selection (B
// underflows to zero) reports nullopt; callers treat it as zero separation.
std::optional<double> sep_proxy(const RwParams& params, ThresholdKind kind,
                                double t);

// Phi(-0.5*sqrt(p/n)*sep); 0.5 on empty selection.
double err_proxy(const RwParams& params, ThresholdKind kind, double t);

// FPR/(TPR+FPR) and FPR'/(TPR'+FPR'); nullopt when the denominator
// underflows to zero.
std::optional<double> fdr_proxy(const RwParams& params, double t);
std::optional<double> lfdr_proxy(const RwParams& params, double t);

// Maximizes the proxy separation over [0, tau+6] (grid step 1e-3, golden
// section to width 1e-9, ties toward the smallest t) and evaluates the full
// summary at the maximizer.
IdealSummary ideal_threshold(const RwParams& params, ThresholdKind kind);

struct TangentSecant {
  double lfdr = 0.0;          // Lfdr(t)
  double balanced_fdr = 0.0;  // (1 + FDR(t)) / 2
};

// The two sides of the tangent-secant identity; they agree at the maximizer
// of the alternate proxy separation.
std::optional<TangentSecant> tangent_secant_check(const RwParams& params,
                                                  double t);

// Maximizer of the alternate proxy 2*tau*TPR/sqrt(TPR+FPR) (the IDR term
// dropped). Grid + golden section, then a stationarity bisection polish on
// 2A'B = AB' inside the final bracket.
double alt_sep_argmax(const RwParams& params);

// Smallest t >= 0 with proxy FDR below alpha. Proxy FDR is monotone
// decreasing in t (checked during the scan); bisection refines the bracket
// to 1e-9. nullopt when the constraint is unattainable on [0, tau+6].
std::optional<double> fdrt_threshold(const RwParams& params, double alpha);

// norm_sf_inv(1/p): one expected false alarm among p null features.
// Throws std::invalid_argument for p < 2.
double bonferroni_threshold(std::int64_t p);

struct HcSepPair {
  double hc = 0.0;
  double sep = 0.0;
};

// Ideal HC objective and clip proxy separation at the same threshold, for
// ratio/alignment testing in the upper tail.
HcSepPair hc_vs_sep_alignment(const RwParams& params, double t);

}  // namespace hctlab
