#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "hctlab/hc.hpp"
#include "hctlab/normal.hpp"
#include "hctlab/params.hpp"
#include "hctlab/rwsim.hpp"
#include "oracles.hpp"

using hctlab::FoldedMixture;
using hctlab::hc_objective;
using hctlab::HcScanResult;
using hctlab::hct_empirical;
using hctlab::hct_ideal;

namespace {

// Independent exhaustive scan: sort p-values, evaluate the objective at every
// index in range, keep the first maximum.
HcScanResult exhaustive_hct(const std::vector<double>& z, double alpha0) {
  std::vector<double> abs_z(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) abs_z[j] = std::fabs(z[j]);
  std::sort(abs_z.rbegin(), abs_z.rend());
  const auto n = static_cast<std::int64_t>(z.size());
  const std::int64_t top = std::min<std::int64_t>(
      n - 1,
      std::max<std::int64_t>(
          1, static_cast<std::int64_t>(std::floor(alpha0 * static_cast<double>(n)))));
  HcScanResult best;
  best.objective_max = -1e300;
  for (std::int64_t i = 1; i <= top; ++i) {
    const double p = 2.0 * hctlab::norm_sf(abs_z[static_cast<std::size_t>(i - 1)]);
    const double frac = static_cast<double>(i) / static_cast<double>(n);
    const double v = std::sqrt(static_cast<double>(n)) * (frac - p) /
                     std::sqrt(frac * (1.0 - frac));
    if (v > best.objective_max) {
      best.objective_max = v;
      best.argmax_index = i;
      best.threshold = abs_z[static_cast<std::size_t>(i - 1)];
    }
  }
  return best;
}

std::vector<double> typical_normals(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<double> z(n);
  for (auto& v : z) v = gauss(rng);
  return z;
}

}  // namespace

TEST_CASE("hc objective") {
  // Observed equals expected: exactly zero.
  for (std::int64_t n : {10, 100, 5000})
    for (std::int64_t i : {std::int64_t{1}, n / 4, n - 1})
      CHECK(hc_objective(i, n, static_cast<double>(i) / static_cast<double>(n)) ==
            0.0);
  // Direct evaluation: 10*(0.01-0.001)/sqrt(0.01*0.99).
  CHECK(hc_objective(1, 100, 0.001) ==
        doctest::Approx(0.9045340337332908679404).epsilon(1e-14));
  CHECK(hc_objective(10, 100, 0.20) < 0.0);

  CHECK_THROWS_AS(hc_objective(100, 100, 0.5), std::domain_error);
  CHECK_THROWS_AS(hc_objective(0, 100, 0.5), std::domain_error);
  CHECK_THROWS_AS(hc_objective(5, 100, 0.0), std::domain_error);
  CHECK_THROWS_AS(hc_objective(5, 100, 1.0), std::domain_error);
}

TEST_CASE("p-values from z-scores") {
  const std::vector<double> z{0.0, 1.96, -1.96, 0.5, -8.0};
  const auto p = hctlab::p_values_from_z(z);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == doctest::Approx(0.04999579029644087242565).epsilon(1e-12));
  CHECK(p[2] == p[1]);  // two-sided: sign-free
  for (double v : p) {
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }

  SUBCASE("ordering follows |z|") {
    const auto zs = typical_normals(256, 11);
    const auto ps = hctlab::p_values_from_z(zs);
    for (std::size_t a = 0; a < zs.size(); ++a)
      for (std::size_t b = a + 1; b < zs.size(); ++b)
        if (std::fabs(zs[a]) > std::fabs(zs[b])) CHECK(ps[a] < ps[b]);
  }

  SUBCASE("underflowing tails clamp to the smallest positive double") {
    const auto ps = hctlab::p_values_from_z(std::vector<double>{45.0});
    CHECK(ps[0] > 0.0);
  }
}

TEST_CASE("empirical HCT") {
  SUBCASE("one huge coordinate wins") {
    // Background sample with a mild upper tail (second-largest |z| ~ 2.1);
    // a heavier draw can legitimately move the argmax off i = 1.
    auto z = typical_normals(100, 5);
    z[0] = 10.0;
    const auto result = hct_empirical(z, 0.10);
    CHECK(result.argmax_index == 1);
    CHECK(result.threshold == 10.0);
    const auto expect = exhaustive_hct(z, 0.10);
    CHECK(result.argmax_index == expect.argmax_index);
    CHECK(result.objective_max == doctest::Approx(expect.objective_max));
  }

  SUBCASE("near-uniform p-values push the argmax to the scan edge") {
    // z built so the i-th p-value is i/(N+1).
    const std::size_t n = 100;
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i)
      z[i] = hctlab::norm_sf_inv(0.5 * static_cast<double>(i + 1) /
                                 static_cast<double>(n + 1));
    const auto result = hct_empirical(z, 0.10);
    for (const auto& entry : result.trace) CHECK(entry.hc_value > 0.0);
    CHECK(result.argmax_index == 10);  // floor(alpha0 * N)
    const auto expect = exhaustive_hct(z, 0.10);
    CHECK(result.argmax_index == expect.argmax_index);
  }

  SUBCASE("permutation invariance") {
    auto z = typical_normals(500, 7);
    z[3] = 6.0;
    const auto base = hct_empirical(z, 0.10);
    std::mt19937_64 rng(99);
    std::shuffle(z.begin(), z.end(), rng);
    const auto shuffled = hct_empirical(z, 0.10);
    CHECK(base.argmax_index == shuffled.argmax_index);
    CHECK(base.threshold == shuffled.threshold);
    CHECK(base.objective_max == shuffled.objective_max);
  }

  SUBCASE("trace maximum equals the reported maximum") {
    const auto z = typical_normals(300, 5);
    const auto result = hct_empirical(z, 0.10);
    double best = -1e300;
    for (const auto& entry : result.trace) best = std::max(best, entry.hc_value);
    CHECK(result.objective_max == best);
    CHECK(result.trace[static_cast<std::size_t>(result.argmax_index - 1)].hc_value ==
          result.objective_max);
  }

  SUBCASE("small N degenerates to a single scan index") {
    const std::vector<double> z{1.0, -2.0, 0.3};  // floor(0.1*3) = 0 -> i = 1
    const auto result = hct_empirical(z, 0.10);
    CHECK(result.argmax_index == 1);
    CHECK(result.threshold == 2.0);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(hct_empirical(std::vector<double>{}, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(hct_empirical(std::vector<double>{1.0}, 0.1),
                    std::invalid_argument);
    const std::vector<double> ok{1.0, 2.0};
    CHECK_THROWS_AS(hct_empirical(ok, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hct_empirical(ok, 1.5), std::invalid_argument);
  }
}

TEST_CASE("ideal HCT functional") {
  const FoldedMixture m{0.01, 3.0};
  const double t_star = hct_ideal(m, 0.5);
  auto objective = [&m](double t) { return hctlab::hc_ideal_objective(m, t); };

  SUBCASE("beats its neighborhood and a brute-force grid") {
    CHECK(objective(t_star) >= objective(t_star - 0.01));
    CHECK(objective(t_star) >= objective(t_star + 0.01));
    const auto grid = oracle::grid_argmax(objective, 0.5, 10.0, 100000);
    CHECK(objective(t_star) >= grid.value - 1e-10);
    CHECK(t_star == doctest::Approx(grid.arg).epsilon(1e-3));
  }

  SUBCASE("interior values dominate the scan edges") {
    CHECK(objective(t_star) > objective(0.501));
    CHECK(objective(t_star) > objective(8.9));
  }

  SUBCASE("stronger signal never lowers the maximized objective") {
    double prev = -1e300;
    for (double tau : {2.0, 3.0, 4.0}) {
      const FoldedMixture mix{0.01, tau};
      const double cur = hctlab::hc_ideal_objective(mix, hct_ideal(mix, 0.5));
      CHECK(cur >= prev);
      prev = cur;
    }
  }

  SUBCASE("degenerate at the pure-null mixture") {
    CHECK_THROWS_AS(hct_ideal(FoldedMixture{0.0, 3.0}, 0.5), std::domain_error);
  }
}

TEST_CASE("empirical HCT concentrates near the ideal HCT") {
  // Strong-signal corner of the asymptotic model at p = 1e4.
  const hctlab::ArwParams arw{0.5, 0.49, 10000};
  const hctlab::RwParams params = arw.to_rw();
  const double ideal =
      hct_ideal(FoldedMixture{params.epsilon, params.tau}, 0.5);

  hctlab::SimConfig config;
  config.params = params;
  config.seed = 20240817;
  std::vector<double> deviations;
  for (std::int64_t rep = 0; rep < 50; ++rep) {
    const auto data = hctlab::generate(config, rep);
    const double t_hat = hct_empirical(data.z, 0.10).threshold;
    deviations.push_back(std::fabs(t_hat - ideal) / ideal);
  }
  std::sort(deviations.begin(), deviations.end());
  const double median = deviations[deviations.size() / 2];
  CHECK(median <= 0.15);
}
