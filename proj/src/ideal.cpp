#include "hctlab/ideal.hpp"

#include <cmath>
#include <stdexcept>

#include "hctlab/folded.hpp"
#include "hctlab/hc.hpp"
#include "hctlab/normal.hpp"
#include "hctlab/optimize.hpp"

namespace hctlab {

namespace {

constexpr double grid_step = 1e-3;
constexpr double golden_width = 1e-9;

double scan_upper(const RwParams& params) { return params.tau + 6.0; }

// Alternate proxy 2*tau*TPR/sqrt(TPR+FPR), the clip separation with the
// inverted-detection term dropped.
double alt_sep(const RwParams& params, double t) {
  const Rates rt = rates(params, t);
  const double b = rt.tpr + rt.fpr;
  if (!(b > 0.0)) return 0.0;
  return 2.0 * params.tau * rt.tpr / std::sqrt(b);
}

// Stationarity residual of the alternate proxy: with A = tau*TPR and
// B = TPR+FPR, d/dt (A/sqrt(B)) has the sign of 2A'B - AB'. Positive to the
// left of the maximizer, negative to the right.
double alt_stationarity(const RwParams& params, double t) {
  const Rates rt = rates(params, t);
  const double a = params.tau * rt.tpr;
  const double a_deriv = -params.tau * rt.tpr_deriv;
  const double b = rt.tpr + rt.fpr;
  const double b_deriv = -(rt.tpr_deriv + rt.fpr_deriv);
  return 2.0 * a_deriv * b - a * b_deriv;
}

IdealSummary summary_at(const RwParams& params, ThresholdKind kind, double t) {
  IdealSummary out;
  out.threshold = t;
  const auto sep = sep_proxy(params, kind, t);
  out.sep = sep.value_or(0.0);
  out.err = err_proxy(params, kind, t);
  const Rates rt = rates(params, t);
  out.tpr = rt.tpr;
  out.fpr = rt.fpr;
  out.idr = rt.idr;
  out.fdr = fdr_proxy(params, t).value_or(1.0);
  out.lfdr = lfdr_proxy(params, t).value_or(1.0);
  return out;
}

}  // namespace

Rates rates(const RwParams& params, double t) {
  if (t < 0.0) throw std::domain_error("rates: t must be >= 0");
  const double eps = params.epsilon;
  const double tau = params.tau;
  Rates out;
  out.tpr = eps * folded_normal_sf(tau, t);
  out.fpr = (1.0 - eps) * folded_normal_sf(0.0, t);
  out.idr = eps * norm_sf(t + tau);
  out.tpr_deriv = eps * (norm_pdf(t - tau) + norm_pdf(t + tau));
  out.fpr_deriv = (1.0 - eps) * 2.0 * norm_pdf(t);
  return out;
}

std::optional<double> sep_proxy(const RwParams& params, ThresholdKind kind,
                                double t) {
  if (t < 0.0) throw std::domain_error("sep_proxy: t must be >= 0");
  const double eps = params.epsilon;
  const double tau = params.tau;
  const double a = eps * tau * threshold_moment(kind, t, tau, 1);
  const double b = eps * threshold_moment(kind, t, tau, 2) +
                   (1.0 - eps) * threshold_moment(kind, t, 0.0, 2);
  if (!(b > 0.0)) return std::nullopt;  // empty selection
  return 2.0 * a / std::sqrt(b);
}

double err_proxy(const RwParams& params, ThresholdKind kind, double t) {
  const auto sep = sep_proxy(params, kind, t);
  if (!sep) return 0.5;
  const double scale =
      std::sqrt(static_cast<double>(params.p) / static_cast<double>(params.n));
  return norm_cdf(-0.5 * scale * *sep);
}

std::optional<double> fdr_proxy(const RwParams& params, double t) {
  const Rates rt = rates(params, t);
  const double denom = rt.tpr + rt.fpr;
  if (!(denom > 0.0)) return std::nullopt;
  return rt.fpr / denom;
}

std::optional<double> lfdr_proxy(const RwParams& params, double t) {
  const Rates rt = rates(params, t);
  const double denom = rt.tpr_deriv + rt.fpr_deriv;
  if (!(denom > 0.0)) return std::nullopt;
  return rt.fpr_deriv / denom;
}

IdealSummary ideal_threshold(const RwParams& params, ThresholdKind kind) {
  params.validate();
  auto objective = [&](double t) {
    return sep_proxy(params, kind, t).value_or(0.0);
  };
  const auto max = maximize_scan(objective, 0.0, scan_upper(params), grid_step,
                                 golden_width);
  return summary_at(params, kind, max.arg);
}

std::optional<TangentSecant> tangent_secant_check(const RwParams& params,
                                                  double t) {
  const auto fdr = fdr_proxy(params, t);
  const auto lfdr = lfdr_proxy(params, t);
  if (!fdr || !lfdr) return std::nullopt;
  return TangentSecant{*lfdr, 0.5 * (1.0 + *fdr)};
}

double alt_sep_argmax(const RwParams& params) {
  params.validate();
  auto objective = [&](double t) { return alt_sep(params, t); };
  const auto max = maximize_scan(objective, 0.0, scan_upper(params), grid_step,
                                 golden_width);
  // Polish with a sign bisection of the analytic stationarity condition.
  double lo = std::max(0.0, max.arg - 1e-6);
  double hi = std::min(scan_upper(params), max.arg + 1e-6);
  if (alt_stationarity(params, lo) > 0.0 && alt_stationarity(params, hi) < 0.0) {
    for (int iter = 0; iter < 80 && hi - lo > 1e-14; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (alt_stationarity(params, mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  return max.arg;
}

std::optional<double> fdrt_threshold(const RwParams& params, double alpha) {
  params.validate();
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("fdrt_threshold: alpha must lie in (0,1)");
  auto fdr_at = [&](double t) { return fdr_proxy(params, t); };

  const double t0 = 0.0;
  auto first = fdr_at(t0);
  if (first && *first < alpha) return t0;

  // Scan for the first crossing, checking the monotone-decrease premise the
  // bisection relies on.
  const double t_max = scan_upper(params);
  double prev_t = t0;
  double prev_fdr = first.value_or(1.0);
  const auto n_steps = static_cast<long long>(std::ceil(t_max / grid_step));
  for (long long i = 1; i <= n_steps; ++i) {
    const double t = std::min(t_max, static_cast<double>(i) * grid_step);
    const auto fdr = fdr_at(t);
    if (!fdr) break;  // rates underflowed; nothing attainable beyond
    if (*fdr > prev_fdr + 1e-12)
      throw std::logic_error("fdrt_threshold: proxy FDR not decreasing");
    if (*fdr < alpha) {
      double lo = prev_t;
      double hi = t;
      while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        const auto m = fdr_at(mid);
        if (m && *m < alpha)
          hi = mid;
        else
          lo = mid;
      }
      return hi;
    }
    prev_t = t;
    prev_fdr = *fdr;
  }
  return std::nullopt;  // unattainable in the scan range
}

double bonferroni_threshold(std::int64_t p) {
  if (p < 2) throw std::invalid_argument("bonferroni_threshold: p must be >= 2");
  return norm_sf_inv(1.0 / static_cast<double>(p));
}

HcSepPair hc_vs_sep_alignment(const RwParams& params, double t) {
  const FoldedMixture mixture{params.epsilon, params.tau};
  return HcSepPair{hc_ideal_objective(mixture, t),
                   sep_proxy(params, ThresholdKind::Clip, t).value_or(0.0)};
}

}  // namespace hctlab
