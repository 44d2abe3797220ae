#include "hctlab/rwsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "hctlab/hc.hpp"
#include "hctlab/ideal.hpp"
#include "hctlab/normal.hpp"
#include "hctlab/parallel.hpp"

namespace hctlab {

namespace {

constexpr std::int64_t full_matrix_entry_cap = 1'000'000'000;

std::uint64_t splitmix_step(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Independent stream id per (seed, replicate, purpose).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replicate,
                          std::uint64_t purpose) {
  std::uint64_t s = splitmix_step(seed ^ (replicate * 0xD1B54A32D192ED03ULL));
  return splitmix_step(s ^ (purpose * 0x8CB92BA72F3D8DD7ULL));
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

Aggregate aggregate_of(const std::vector<double>& values) {
  Aggregate agg;
  const std::size_t m = values.size();
  if (m == 0) return agg;
  agg.mean = pairwise_sum(values.data(), m) / static_cast<double>(m);
  if (m < 2) return agg;
  std::vector<double> sq(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = values[i] - agg.mean;
    sq[i] = d * d;
  }
  const double ssd = pairwise_sum(sq.data(), m);
  agg.std_error =
      std::sqrt(ssd / static_cast<double>(m - 1) / static_cast<double>(m));
  return agg;
}

std::int64_t strict_useful_count(const RwParams& params) {
  const std::int64_t k =
      std::llround(params.epsilon * static_cast<double>(params.p));
  if (k < 1)
    throw std::invalid_argument(
        "rwsim: round(epsilon*p) must be >= 1 so useful features exist");
  return k;
}

}  // namespace

std::optional<ZscoreMode> zscore_mode_from_string(std::string_view name) {
  if (name == "direct") return ZscoreMode::Direct;
  if (name == "full-matrix") return ZscoreMode::FullMatrix;
  return std::nullopt;
}

std::optional<Selector> selector_from_string(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  double value = 0.0;
  bool has_value = false;
  if (colon != std::string_view::npos) {
    try {
      value = std::stod(std::string(spec.substr(colon + 1)));
      has_value = true;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (head == "hct") return Selector::hct(has_value ? value : 0.10);
  if (head == "ideal" && !has_value) return Selector::ideal_oracle();
  if (head == "fixed" && has_value) return Selector::fixed(value);
  if (head == "fdrt" && has_value) return Selector::fdrt(value);
  if (head == "bonferroni" && !has_value) return Selector::bonferroni();
  return std::nullopt;
}

GeneratedData generate(const SimConfig& config, std::int64_t replicate_index) {
  const RwParams& params = config.params;
  params.validate();
  const std::int64_t k = strict_useful_count(params);
  const auto p = static_cast<std::size_t>(params.p);

  GeneratedData data;
  data.test_seed = stream_seed(config.seed,
                               static_cast<std::uint64_t>(replicate_index), 2);

  // Useful-feature support: partial Fisher-Yates from a dedicated stream so
  // Direct and FullMatrix runs share the same mu.
  std::mt19937_64 mu_rng(
      stream_seed(config.seed, static_cast<std::uint64_t>(replicate_index), 0));
  std::vector<std::uint32_t> positions(p);
  std::iota(positions.begin(), positions.end(), 0u);
  for (std::int64_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i),
                                                    p - 1);
    std::swap(positions[static_cast<std::size_t>(i)], positions[pick(mu_rng)]);
  }
  const double mu0 =
      params.tau / std::sqrt(static_cast<double>(params.n));
  data.mu.assign(p, 0.0);
  for (std::int64_t i = 0; i < k; ++i)
    data.mu[positions[static_cast<std::size_t>(i)]] = mu0;

  std::mt19937_64 z_rng(
      stream_seed(config.seed, static_cast<std::uint64_t>(replicate_index), 1));
  std::normal_distribution<double> gauss;
  data.z.resize(p);
  if (config.zscore_mode == ZscoreMode::Direct) {
    const double sqrt_n = std::sqrt(static_cast<double>(params.n));
    for (std::size_t j = 0; j < p; ++j)
      data.z[j] = sqrt_n * data.mu[j] + gauss(z_rng);
  } else {
    if (params.n % 2 != 0)
      throw std::invalid_argument(
          "rwsim: FullMatrix mode needs an even n for balanced labels");
    if (params.p * params.n > full_matrix_entry_cap)
      throw std::invalid_argument(
          "rwsim: FullMatrix matrix would exceed 1e9 entries");
    // z(j) = n^{-1/2} sum_i Y_i X_i(j), X_i = Y_i*mu + noise; accumulate one
    // training row at a time.
    std::vector<double> sums(p, 0.0);
    for (std::int64_t i = 0; i < params.n; ++i) {
      const double label = i < params.n / 2 ? 1.0 : -1.0;
      for (std::size_t j = 0; j < p; ++j)
        sums[j] += label * (label * data.mu[j] + gauss(z_rng));
    }
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(params.n));
    for (std::size_t j = 0; j < p; ++j) data.z[j] = sums[j] * inv_sqrt_n;
  }
  return data;
}

std::vector<double> build_classifier(std::span<const double> z,
                                     ThresholdKind kind, double t) {
  if (t < 0.0) throw std::domain_error("build_classifier: t must be >= 0");
  std::vector<double> w(z.size());
  for (std::size_t j = 0; j < z.size(); ++j)
    w[j] = apply_threshold(kind, t, z[j]);
  return w;
}

double test_error(std::span<const double> w, std::span<const double> mu,
                  std::int64_t size, std::uint64_t test_seed) {
  if (size < 1) throw std::invalid_argument("test_error: size must be >= 1");
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < w.size(); ++j)
    if (w[j] != 0.0) support.push_back(j);
  double w_dot_mu = 0.0;
  for (std::size_t j : support) w_dot_mu += w[j] * mu[j];

  std::mt19937_64 rng(test_seed);
  std::normal_distribution<double> gauss;
  std::int64_t wrong = 0;
  for (std::int64_t s = 0; s < size; ++s) {
    const double label = (s % 2 == 0) ? 1.0 : -1.0;
    double statistic = label * w_dot_mu;
    for (std::size_t j : support) statistic += w[j] * gauss(rng);
    const double predicted = statistic < 0.0 ? -1.0 : 1.0;  // 0 breaks to +1
    if (predicted != label) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(size);
}

SimOutcome run(const SimConfig& config) {
  const RwParams& params = config.params;
  params.validate();
  const std::int64_t k = strict_useful_count(params);
  if (config.replicates < 1)
    throw std::invalid_argument("rwsim: replicates must be >= 1");
  if (config.test_size < 1)
    throw std::invalid_argument("rwsim: test_size must be >= 1");
  if (config.selector.kind == SelectorKind::Hct && params.p < 2)
    throw std::invalid_argument("rwsim: HCT selector needs p >= 2");

  // Deterministic selectors resolve once, up front.
  bool selector_failed = false;
  double fixed_threshold = 0.0;
  switch (config.selector.kind) {
    case SelectorKind::IdealOracle:
      fixed_threshold = ideal_threshold(params, config.kind).threshold;
      break;
    case SelectorKind::FixedThreshold:
      if (config.selector.value < 0.0)
        throw std::invalid_argument("rwsim: fixed threshold must be >= 0");
      fixed_threshold = config.selector.value;
      break;
    case SelectorKind::Fdrt: {
      const auto t = fdrt_threshold(params, config.selector.value);
      if (t)
        fixed_threshold = *t;
      else
        selector_failed = true;  // unattainable: flag every replicate
      break;
    }
    case SelectorKind::Bonferroni:
      fixed_threshold = bonferroni_threshold(params.p);
      break;
    case SelectorKind::Hct:
      if (!(config.selector.value > 0.0 && config.selector.value <= 1.0))
        throw std::invalid_argument("rwsim: alpha0 must lie in (0,1]");
      break;
  }

  SimOutcome outcome;
  outcome.records.assign(static_cast<std::size_t>(config.replicates), {});
  parallel_for(config.replicates, [&](std::int64_t rep) {
    ReplicateRecord& rec = outcome.records[static_cast<std::size_t>(rep)];
    if (selector_failed) {
      rec.flagged = true;
      return;
    }
    const GeneratedData data = generate(config, rep);
    const double t = config.selector.kind == SelectorKind::Hct
                         ? hct_empirical(data.z, config.selector.value).threshold
                         : fixed_threshold;
    const std::vector<double> w = build_classifier(data.z, config.kind, t);

    rec.threshold_used = t;
    double w_dot_mu = 0.0;
    double w_norm_sq = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] == 0.0) continue;
      ++rec.n_selected;
      if (data.mu[j] != 0.0) ++rec.n_true_selected;
      w_dot_mu += w[j] * data.mu[j];
      w_norm_sq += w[j] * w[j];
    }
    rec.realized_fdr =
        static_cast<double>(rec.n_selected - rec.n_true_selected) /
        static_cast<double>(std::max<std::int64_t>(1, rec.n_selected));
    rec.realized_mdr = 1.0 - static_cast<double>(rec.n_true_selected) /
                                 static_cast<double>(k);
    rec.test_error = test_error(w, data.mu, config.test_size, data.test_seed);
    rec.exact_error = w_norm_sq > 0.0
                          ? norm_cdf(-w_dot_mu / std::sqrt(w_norm_sq))
                          : 0.5;
  });

  std::vector<double> thr, fdr, mdr, terr, xerr;
  for (const ReplicateRecord& rec : outcome.records) {
    if (rec.flagged) {
      ++outcome.flagged_count;
      continue;
    }
    thr.push_back(rec.threshold_used);
    fdr.push_back(rec.realized_fdr);
    mdr.push_back(rec.realized_mdr);
    terr.push_back(rec.test_error);
    xerr.push_back(rec.exact_error);
  }
  outcome.threshold = aggregate_of(thr);
  outcome.fdr = aggregate_of(fdr);
  outcome.mdr = aggregate_of(mdr);
  outcome.test_error = aggregate_of(terr);
  outcome.exact_error = aggregate_of(xerr);
  return outcome;
}

}  // namespace hctlab
