#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hctlab/params.hpp"
#include "hctlab/threshold.hpp"

// Monte Carlo simulator of the rare/weak model: training data, z-scores,
// thresholded linear classifiers, and realized error/FDR/MDR.
//
// Determinism: replicate i draws from streams derived from (seed, i) alone,
// so outcomes are bit-identical however replicates are scheduled;
// aggregation reduces the record vector with a fixed pairwise tree.

namespace hctlab {

enum class SelectorKind { Hct, IdealOracle, FixedThreshold, Fdrt, Bonferroni };

struct Selector {
  SelectorKind kind = SelectorKind::Hct;
  double value = 0.10;  // alpha0 (Hct), t (FixedThreshold), alpha (Fdrt)

  static Selector hct(double alpha0 = 0.10) { return {SelectorKind::Hct, alpha0}; }
  static Selector ideal_oracle() { return {SelectorKind::IdealOracle, 0.0}; }
  static Selector fixed(double t) { return {SelectorKind::FixedThreshold, t}; }
  static Selector fdrt(double alpha) { return {SelectorKind::Fdrt, alpha}; }
  static Selector bonferroni() { return {SelectorKind::Bonferroni, 0.0}; }
};

enum class ZscoreMode { Direct, FullMatrix };

std::optional<ZscoreMode> zscore_mode_from_string(std::string_view name);
std::optional<Selector> selector_from_string(std::string_view spec);

struct SimConfig {
  RwParams params;
  ThresholdKind kind = ThresholdKind::Clip;
  Selector selector;
  std::int64_t replicates = 100;
  std::int64_t test_size = 2000;
  std::uint64_t seed = 0;
  ZscoreMode zscore_mode = ZscoreMode::Direct;
};

// One replicate's data. The test set is a deterministic stream of labeled
// pairs (Y, X), X ~ N(Y*mu, I_p) with balanced labels, identified by
// test_seed; samples are drawn from it on demand during evaluation.
struct GeneratedData {
  std::vector<double> mu;  // contrast vector, useful entries tau/sqrt(n)
  std::vector<double> z;   // feature z-scores
  std::uint64_t test_seed = 0;
};

// Draws mu (round(eps*p) useful coordinates at uniformly random positions)
// and z. Direct mode: z ~ N(theta, I_p), theta = sqrt(n)*mu. FullMatrix
// mode: z(j) = n^{-1/2} sum_i Y_i X_i(j) from a balanced training set
// (requires n even and p*n <= 1e9). Fully determined by (config.seed,
// replicate_index). Throws std::invalid_argument when round(eps*p) == 0 or
// the FullMatrix constraints fail.
GeneratedData generate(const SimConfig& config, std::int64_t replicate_index);

// w(j) = eta_t(z(j)). Requires t >= 0. An all-zero w is legal; the
// classifier sign(<w, X>) then breaks the 0 tie to +1 and predicts +1
// always.
std::vector<double> build_classifier(std::span<const double> z,
                                     ThresholdKind kind, double t);

// Empirical misclassification rate of w over size labeled test samples from
// the stream test_seed. Only the support of w enters <w, X>, so only those
// coordinates are drawn; the law of the decision statistic is exact.
double test_error(std::span<const double> w, std::span<const double> mu,
                  std::int64_t size, std::uint64_t test_seed);

struct ReplicateRecord {
  double threshold_used = 0.0;
  std::int64_t n_selected = 0;
  std::int64_t n_true_selected = 0;
  double realized_fdr = 0.0;
  double realized_mdr = 0.0;
  double test_error = 0.5;
  double exact_error = 0.5;  // Phi(-0.5 * 2<w,mu>/||w||), model-exact
  bool flagged = false;      // selector failed; metrics not meaningful
};

struct Aggregate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct SimOutcome {
  std::vector<ReplicateRecord> records;
  std::int64_t flagged_count = 0;
  Aggregate threshold;
  Aggregate fdr;
  Aggregate mdr;
  Aggregate test_error;
  Aggregate exact_error;
};

// Runs all replicates (concurrently up to thread_cap()) and aggregates the
// unflagged records. Selector failures flag the affected replicates instead
// of aborting the run.
SimOutcome run(const SimConfig& config);

}  // namespace hctlab
