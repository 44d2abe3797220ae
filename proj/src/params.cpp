#include "hctlab/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hctlab {

void RwParams::validate() const {
  if (p < 1) throw std::invalid_argument("RwParams: p must be >= 1");
  if (n < 1) throw std::invalid_argument("RwParams: n must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("RwParams: epsilon must lie in (0,1)");
  if (!(tau > 0.0)) throw std::invalid_argument("RwParams: tau must be > 0");
}

std::int64_t useful_count(const RwParams& params) {
  return std::max<std::int64_t>(
      1, std::llround(params.epsilon * static_cast<double>(params.p)));
}

double ArwParams::epsilon() const {
  return std::pow(static_cast<double>(p), -beta);
}

double ArwParams::tau() const {
  return std::sqrt(2.0 * r * std::log(static_cast<double>(p)));
}

std::int64_t ArwParams::n() const {
  const double lp = std::log(static_cast<double>(p));
  return std::max<std::int64_t>(2, std::llround(c * std::pow(lp, growth)));
}

RwParams ArwParams::to_rw() const {
  return RwParams{p, n(), epsilon(), tau()};
}

void ArwParams::validate() const {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("ArwParams: beta must lie in (0,1)");
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("ArwParams: r must lie in (0,1)");
  if (p < 2) throw std::invalid_argument("ArwParams: p must be >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("ArwParams: c must be > 0");
  if (!(growth >= 0.0))
    throw std::invalid_argument("ArwParams: growth must be >= 0");
}

}  // namespace hctlab
