#pragma once

#include <cstdint>

namespace hctlab {

// Finite rare/weak model parameters: p features, n training samples, a
// fraction epsilon of useful features of common z-score strength tau.
struct RwParams {
  std::int64_t p = 0;
  std::int64_t n = 0;
  double epsilon = 0.0;
  double tau = 0.0;

  // Throws std::invalid_argument unless p >= 1, n >= 1, 0 < epsilon < 1,
  // tau > 0.
  void validate() const;
};

// Number of useful features, round(epsilon * p) floored at one.
std::int64_t useful_count(const RwParams& params);

// Asymptotic coordinates: epsilon = p^-beta, tau = sqrt(2 r log p). The
// training size grows polylogarithmically, n = max(2, round(c * log(p)^growth));
// the defaults give n = log(p)/2. c and growth only rescale the error proxy,
// never the phase partition.
struct ArwParams {
  double beta = 0.0;
  double r = 0.0;
  std::int64_t p = 0;
  double c = 0.5;
  double growth = 1.0;

  double epsilon() const;
  double tau() const;
  std::int64_t n() const;
  RwParams to_rw() const;

  // Throws std::invalid_argument unless 0 < beta < 1, 0 < r < 1, p >= 2,
  // c > 0, growth >= 0.
  void validate() const;
};

}  // namespace hctlab
