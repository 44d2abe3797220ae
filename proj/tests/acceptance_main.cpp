// Acceptance suite: every release criterion is one timed check that prints a
// single PASS/FAIL line. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hctlab/folded.hpp"
#include "hctlab/hc.hpp"
#include "hctlab/ideal.hpp"
#include "hctlab/normal.hpp"
#include "hctlab/params.hpp"
#include "hctlab/phase.hpp"
#include "hctlab/rwsim.hpp"
#include "hctlab/threshold.hpp"
#include "oracles.hpp"

using namespace hctlab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

#define REQUIRE_THAT(cond, ...)                         \
  do {                                                  \
    if (!(cond)) {                                      \
      out.pass = false;                                 \
      out.detail << " [failed: " << #cond << "]";       \
    }                                                   \
  } while (0)

// ---------------------------------------------------------------------------
// 1. rho* branch formulas and continuity, under one second.
Outcome c1_phase_boundary() {
  Outcome out;
  REQUIRE_THAT(rho_star(0.2) == 0.0);
  REQUIRE_THAT(rho_star(0.49) == 0.0);
  REQUIRE_THAT(std::fabs(rho_star(0.6) - 0.1) <= 1e-15);
  REQUIRE_THAT(std::fabs(rho_star(0.7) - 0.2) <= 1e-15);
  const auto squared = [](double beta) {
    const double root = 1.0 - std::sqrt(1.0 - beta);
    return root * root;
  };
  for (double beta : {0.76, 0.84, 0.9, 0.99})
    REQUIRE_THAT(std::fabs(rho_star(beta) - squared(beta)) <= 1e-15);
  // Branch agreement: both expressions meet at 1/4 when beta = 3/4.
  REQUIRE_THAT(std::fabs(rho_star(0.75) - 0.25) <= 1e-15);
  REQUIRE_THAT(std::fabs(squared(0.75) - 0.25) <= 1e-15);
  // Continuity at the two branch points.
  REQUIRE_THAT(std::fabs(rho_star(0.5) - rho_star(0.5 + 1e-13)) <= 1e-12);
  REQUIRE_THAT(std::fabs(rho_star(0.75) - rho_star(0.75 + 1e-13)) <= 1e-12);
  out.detail << "branches + continuity at 1/2, 3/4";
  return out;
}

// ---------------------------------------------------------------------------
// 2. argmax_q gamma(q) against the closed-form q*, and the sign flip of
//    max_q gamma across r = rho*(beta). The q* formula presupposes the
//    success region (below the boundary q2 can exceed 1 and leave the grid),
//    so the agreement check runs for r > rho* and the sign check everywhere.
//    In Region III the maximin ties on [beta, r]; there the closed form must
//    land inside the tie set.
Outcome c2_exponent_maximin() {
  Outcome out;
  const int q_points = 1000;  // q grid step 1e-3
  int checked = 0;
  for (int bi = 1; bi <= 99; ++bi) {
    const double beta = bi / 100.0;
    const double boundary = rho_star(beta);
    for (int ri = 1; ri <= 99; ++ri) {
      const double r = ri / 100.0;
      double max_gamma = -1e300;
      for (int qi = 0; qi <= q_points; ++qi)
        max_gamma = std::max(max_gamma,
                             gamma_exponent(qi / 1000.0, beta, r));
      double tie_lo = 2.0, tie_hi = -1.0, first_max = -1.0;
      for (int qi = 0; qi <= q_points; ++qi) {
        const double q = qi / 1000.0;
        if (gamma_exponent(q, beta, r) >= max_gamma - 1e-12) {
          tie_lo = std::min(tie_lo, q);
          tie_hi = std::max(tie_hi, q);
          if (first_max < 0.0) first_max = q;
        }
      }
      if (r > boundary) {
        const QCandidates cand = q_candidates(beta, r);
        const double q_star = r <= beta / 3.0 ? cand.q1 : cand.q2;
        if (tie_hi - tie_lo <= 2e-3) {
          REQUIRE_THAT(std::fabs(first_max - q_star) <= 2e-3);
        } else {
          REQUIRE_THAT(q_star >= tie_lo - 2e-3);
          REQUIRE_THAT(q_star <= tie_hi + 2e-3);
          REQUIRE_THAT(gamma_exponent(q_star, beta, r) >= max_gamma - 1e-9);
        }
      }
      if (r <= boundary) REQUIRE_THAT(max_gamma <= 1e-9);
      if (r >= boundary + 1e-3) {
        REQUIRE_THAT(max_gamma > 0.0);
        const QCandidates cand = q_candidates(beta, r);
        REQUIRE_THAT(gamma_exponent(r <= beta / 3.0 ? cand.q1 : cand.q2, beta,
                                    r) > 0.0);
      }
      ++checked;
      if (!out.pass) {
        out.detail << " at beta=" << beta << " r=" << r;
        return out;
      }
    }
  }
  out.detail << checked << " grid points";
  return out;
}

// ---------------------------------------------------------------------------
// 3. School-algebra facts about q1, q2 on the full grid.
Outcome c3_algebra_facts() {
  Outcome out;
  const double tol = 1e-12;
  for (int bi = 1; bi <= 99 && out.pass; ++bi) {
    const double beta = bi / 100.0;
    const double fdrt_boundary = method_success_region(SelectionMethod::FDRT, beta);
    for (int ri = 1; ri <= 99 && out.pass; ++ri) {
      const double r = ri / 100.0;
      const QCandidates q = q_candidates(beta, r);
      if (r < beta / 3.0 - tol) REQUIRE_THAT(q.q1 < q.q2 + tol);
      if (r > beta / 3.0 + tol) REQUIRE_THAT(q.q2 < q.q1 + tol);
      if (r > fdrt_boundary + tol) REQUIRE_THAT(q.q2 < 1.0 + tol);
      if (r < fdrt_boundary - tol) REQUIRE_THAT(q.q2 > 1.0 - tol);
      if (r < beta - tol) REQUIRE_THAT(r < q.q2 + tol);
      if (r > beta + tol) REQUIRE_THAT(q.q2 < r + tol);
    }
  }
  out.detail << "q1/q2 orderings, boundary tolerance 1e-12";
  return out;
}

// ---------------------------------------------------------------------------
// 4. Exact tangent-secant identity at the alternate-proxy maximizer.
Outcome c4_tangent_secant() {
  Outcome out;
  double worst = 0.0;
  for (double eps : {1e-2, 1e-4})
    for (double tau : {2.0, 3.0, 4.0}) {
      const RwParams params{10000, 5, eps, tau};
      const double t_alt = alt_sep_argmax(params);
      const auto check = tangent_secant_check(params, t_alt).value();
      worst = std::max(worst, std::fabs(check.lfdr - check.balanced_fdr));
    }
  REQUIRE_THAT(worst <= 1e-6);
  out.detail << "max |Lfdr - (1+FDR)/2| = " << worst;
  return out;
}

// ---------------------------------------------------------------------------
// 5. FDR/Lfdr limits at the Region II point (0.6, 0.25).
Outcome c5_region2_limits() {
  Outcome out;
  double prev_fdr_gap = 1e9, prev_lfdr_gap = 1e9;
  double fdr_gap = 0.0, lfdr_gap = 0.0;
  for (double p : {1e6, 1e8, 1e10}) {
    const ArwParams arw{0.6, 0.25, static_cast<std::int64_t>(p)};
    const RwParams params = arw.to_rw();
    const IdealSummary ideal = ideal_threshold(params, ThresholdKind::Clip);
    fdr_gap = std::fabs(ideal.fdr - 0.7);
    lfdr_gap = std::fabs(ideal.lfdr - 0.85);
    REQUIRE_THAT(fdr_gap <= prev_fdr_gap + 1e-9);
    REQUIRE_THAT(lfdr_gap <= prev_lfdr_gap + 1e-9);
    prev_fdr_gap = fdr_gap;
    prev_lfdr_gap = lfdr_gap;
  }
  REQUIRE_THAT(fdr_gap <= 0.1);
  REQUIRE_THAT(lfdr_gap <= 0.1);
  out.detail << "final |FDR-0.7| = " << fdr_gap << ", |Lfdr-0.85| = " << lfdr_gap;
  return out;
}

// ---------------------------------------------------------------------------
// 6. Closed-form moments against adaptive quadrature on the stated grid.
Outcome c6_moments_vs_quadrature() {
  Outcome out;
  int cells = 0;
  for (auto kind : {ThresholdKind::Clip, ThresholdKind::Hard, ThresholdKind::Soft})
    for (int order : {1, 2})
      for (double t = 0.0; t <= 8.0 + 1e-9; t += 0.5)
        for (double mu = 0.0; mu <= 6.0 + 1e-9; mu += 1.0) {
          const double closed = threshold_moment(kind, t, mu, order);
          auto eta = [kind, t, order](double z) {
            const double e = apply_threshold(kind, t, z);
            return order == 1 ? e : e * e;
          };
          const double quad = oracle::threshold_moment_quad(eta, t, mu);
          if (!oracle::close_rel(closed, quad, 1e-8)) {
            out.pass = false;
            out.detail << " [failed at kind=" << to_string(kind)
                       << " order=" << order << " t=" << t << " mu=" << mu
                       << " closed=" << closed << " quad=" << quad << "]";
            return out;
          }
          ++cells;
        }
  out.detail << cells << " grid cells within 1e-8";
  return out;
}

// ---------------------------------------------------------------------------
// 7. HC functional and proxy-separation maximizers align as p grows.
Outcome c7_hc_sep_alignment() {
  Outcome out;
  double prev = 1e9, disp = 0.0;
  for (double p : {1e6, 1e8, 1e10}) {
    const ArwParams arw{0.6, 0.3, static_cast<std::int64_t>(p)};
    const RwParams params = arw.to_rw();
    const double t_hc = hct_ideal(FoldedMixture{params.epsilon, params.tau});
    const double t_sep = ideal_threshold(params, ThresholdKind::Clip).threshold;
    disp = std::fabs(t_hc - t_sep) / t_sep;
    REQUIRE_THAT(disp <= prev + 1e-9);
    prev = disp;
  }
  REQUIRE_THAT(disp <= 0.10);
  out.detail << "final displacement = " << disp;
  return out;
}

// ---------------------------------------------------------------------------
// 8. Monte Carlo consistency at fixed thresholds.
Outcome c8_monte_carlo() {
  Outcome out;
  for (double t : {2.0, 2.5, 3.0}) {
    SimConfig config;
    config.params = RwParams{10000, 6, 0.01, 3.0};
    config.kind = ThresholdKind::Clip;
    config.selector = Selector::fixed(t);
    config.replicates = 100;
    config.test_size = 2000;
    config.seed = 20240601;
    const SimOutcome outcome = run(config);

    const double fdr_target = fdr_proxy(config.params, t).value();
    const double mdr_target = 1.0 - folded_normal_sf(3.0, t);
    const double err_target = err_proxy(config.params, ThresholdKind::Clip, t);

    REQUIRE_THAT(std::fabs(outcome.fdr.mean - fdr_target) <=
                 3.0 * std::max(outcome.fdr.std_error, 1e-6));
    REQUIRE_THAT(std::fabs(outcome.mdr.mean - mdr_target) <=
                 3.0 * std::max(outcome.mdr.std_error, 1e-6));
    // Proxy errors here are ~1e-6 and below; the binomial spread of the
    // pooled test draws is the honest yardstick when replicates all score 0.
    const double pooled = 100.0 * 2000.0;
    const double model_se =
        std::sqrt(err_target * (1.0 - err_target) / pooled);
    REQUIRE_THAT(std::fabs(outcome.test_error.mean - err_target) <=
                 3.0 * std::max(outcome.test_error.std_error, model_se));
    if (!out.pass) {
      out.detail << " at t=" << t;
      return out;
    }
  }
  out.detail << "FDR/MDR/test error within 3 SE at t = 2, 2.5, 3";
  return out;
}

// ---------------------------------------------------------------------------
// 9. Empirical HCT tracks the ideal HCT.
Outcome c9_empirical_vs_ideal_hct() {
  Outcome out;
  const RwParams params{10000, 5, 0.01, 3.0};
  const double ideal = hct_ideal(FoldedMixture{0.01, 3.0});
  SimConfig config;
  config.params = params;
  config.seed = 424242;
  std::vector<double> deviations;
  for (std::int64_t rep = 0; rep < 50; ++rep) {
    const auto data = generate(config, rep);
    const double t_hat = hct_empirical(data.z, 0.10).threshold;
    deviations.push_back(std::fabs(t_hat - ideal) / ideal);
  }
  std::sort(deviations.begin(), deviations.end());
  const double median = deviations[deviations.size() / 2];
  REQUIRE_THAT(median <= 0.15);
  out.detail << "median relative deviation = " << median;
  return out;
}

// ---------------------------------------------------------------------------
// 10. Finite-p boundaries migrate toward rho* as p grows.
Outcome c10_finite_p_boundaries() {
  Outcome out;
  std::vector<double> betas;
  for (double beta = 0.05; beta <= 0.951; beta += 0.05) betas.push_back(beta);
  const std::vector<double> levels{0.10, 0.40};

  std::vector<std::vector<BoundaryRow>> tables;
  for (std::int64_t p : {3000, 30000, 300000})
    tables.push_back(finite_p_boundary(p, levels, betas));

  int comparisons = 0;
  for (std::size_t row = 0; row < tables[0].size(); ++row) {
    const double boundary = rho_star(tables[0][row].beta);
    double prev_gap = 1e9;
    for (const auto& table : tables) {
      if (!table[row].attained) {
        out.pass = false;
        out.detail << " [unattained at beta=" << table[row].beta << " level="
                   << table[row].level << "]";
        return out;
      }
      const double gap = std::fabs(table[row].r - boundary);
      REQUIRE_THAT(gap <= prev_gap + 1e-6);
      prev_gap = gap;
    }
    ++comparisons;
    if (!out.pass) {
      out.detail << " at beta=" << tables[0][row].beta << " level="
                 << tables[0][row].level;
      return out;
    }
  }
  out.detail << comparisons << " (beta, level) curves shrink toward rho*";
  return out;
}

// ---------------------------------------------------------------------------
// 11. Method comparison: boundaries and exponent ordering.
Outcome c11_method_comparison() {
  Outcome out;
  for (double beta = 0.05; beta < 1.0; beta += 0.05) {
    const double root = 1.0 - std::sqrt(1.0 - beta);
    REQUIRE_THAT(method_success_region(SelectionMethod::FDRT, beta) ==
                 root * root);
    REQUIRE_THAT(method_success_region(SelectionMethod::Bonferroni, beta) ==
                 root * root);
  }
  for (double beta : {0.5, 0.625}) {
    bool strict = false;
    for (double r = 1e-3; r < beta; r += 1e-3) {
      const PhasePoint pt = classify(beta, r);
      REQUIRE_THAT(pt.sep_exponent_ideal >= pt.sep_exponent_fdrt - 1e-12);
      REQUIRE_THAT(pt.sep_exponent_fdrt >= pt.sep_exponent_bonf - 1e-12);
      if (pt.sep_exponent_ideal > pt.sep_exponent_fdrt + 1e-9) strict = true;
      if (!out.pass) {
        out.detail << " at beta=" << beta << " r=" << r;
        return out;
      }
    }
    REQUIRE_THAT(strict);
  }
  out.detail << "boundaries exact, ideal >= FDRT >= Bonferroni pointwise";
  return out;
}

// ---------------------------------------------------------------------------
// 12. Direct and full-matrix z-score generators agree in law.
Outcome c12_generator_pair() {
  Outcome out;
  SimConfig direct;
  direct.params = RwParams{64, 6, 0.25, 3.0};
  direct.seed = 31337;
  SimConfig full = direct;
  full.zscore_mode = ZscoreMode::FullMatrix;

  double sum_d = 0.0, sum_f = 0.0, sumsq_d = 0.0, sumsq_f = 0.0;
  double null_sum_d = 0.0, null_sum_f = 0.0;
  std::int64_t count = 0, null_count = 0;
  for (std::int64_t rep = 0; rep < 10000; ++rep) {
    const auto a = generate(direct, rep);
    const auto b = generate(full, rep);
    for (std::size_t j = 0; j < a.mu.size(); ++j) {
      if (a.mu[j] != 0.0) {
        sum_d += a.z[j];
        sum_f += b.z[j];
        sumsq_d += a.z[j] * a.z[j];
        sumsq_f += b.z[j] * b.z[j];
        ++count;
      } else {
        null_sum_d += a.z[j];
        null_sum_f += b.z[j];
        ++null_count;
      }
    }
  }
  const double m = static_cast<double>(count);
  const double mean_d = sum_d / m;
  const double mean_f = sum_f / m;
  const double var_d = sumsq_d / m - mean_d * mean_d;
  const double var_f = sumsq_f / m - mean_f * mean_f;
  const double se_mean = 1.0 / std::sqrt(m);
  const double se_var = std::sqrt(2.0 / m);
  const double mn = static_cast<double>(null_count);

  REQUIRE_THAT(std::fabs(mean_d - 3.0) <= 3.0 * se_mean);
  REQUIRE_THAT(std::fabs(mean_f - 3.0) <= 3.0 * se_mean);
  REQUIRE_THAT(std::fabs(mean_d - mean_f) <= 3.0 * std::sqrt(2.0) * se_mean);
  REQUIRE_THAT(std::fabs(var_d - 1.0) <= 3.0 * se_var);
  REQUIRE_THAT(std::fabs(var_f - 1.0) <= 3.0 * se_var);
  REQUIRE_THAT(std::fabs(null_sum_d / mn) <= 3.0 / std::sqrt(mn));
  REQUIRE_THAT(std::fabs(null_sum_f / mn) <= 3.0 / std::sqrt(mn));
  out.detail << "useful mean " << mean_d << " / " << mean_f << ", var " << var_d
             << " / " << var_f;
  return out;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> body;
  double limit_seconds;  // 0 = no stated limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"C1  phase-boundary formula", c1_phase_boundary, 1.0},
      {"C2  exponent maximin vs closed form", c2_exponent_maximin, 60.0},
      {"C3  q1/q2 algebra facts", c3_algebra_facts, 0.0},
      {"C4  tangent-secant identity", c4_tangent_secant, 0.0},
      {"C5  Region-II FDR/Lfdr limits", c5_region2_limits, 0.0},
      {"C6  moments vs quadrature", c6_moments_vs_quadrature, 30.0},
      {"C7  HC/Sep argmax alignment", c7_hc_sep_alignment, 0.0},
      {"C8  Monte Carlo consistency", c8_monte_carlo, 300.0},
      {"C9  empirical vs ideal HCT", c9_empirical_vs_ideal_hct, 0.0},
      {"C10 finite-p boundaries", c10_finite_p_boundaries, 600.0},
      {"C11 method comparison", c11_method_comparison, 0.0},
      {"C12 direct vs full-matrix generators", c12_generator_pair, 0.0},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criterion.body();
    } catch (const std::exception& err) {
      out.pass = false;
      out.detail << " [exception: " << err.what() << "]";
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.limit_seconds > 0.0 && seconds > criterion.limit_seconds) {
      out.pass = false;
      out.detail << " [over time limit " << criterion.limit_seconds << "s]";
    }
    std::printf("%s: %s (%.2fs) %s\n", criterion.name,
                out.pass ? "PASS" : "FAIL", seconds, out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}
