#pragma once

#include <cmath>

// One-dimensional deterministic maximization: dense grid bracket followed by
// golden-section refinement. The grid guards against secondary local maxima;
// ties resolve toward the smallest argument.

namespace hctlab {

struct ScanMaximum {
  double arg = 0.0;
  double value = 0.0;
};

template <class F>
ScanMaximum maximize_scan(F&& f, double lo, double hi, double step,
                          double final_width) {
  // Grid pass; strict '>' keeps the smallest tied argument.
  double best_arg = lo;
  double best_val = f(lo);
  const auto n_steps = static_cast<long long>(std::floor((hi - lo) / step));
  for (long long i = 1; i <= n_steps; ++i) {
    const double t = lo + static_cast<double>(i) * step;
    const double v = f(t);
    if (v > best_val) {
      best_val = v;
      best_arg = t;
    }
  }
  if (f(hi) > best_val) {
    best_val = f(hi);
    best_arg = hi;
  }

  double a = std::max(lo, best_arg - step);
  double b = std::min(hi, best_arg + step);
  static const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_gr * (b - a);
  double d = a + inv_gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > final_width) {
    if (fc >= fd) {  // '>=' shrinks from the right on ties: smallest argument
      b = d;
      d = c;
      fd = fc;
      c = b - inv_gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_gr * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fmid = f(mid);
  // Never report worse than the best grid point.
  if (fmid >= best_val) return {mid, fmid};
  return {best_arg, best_val};
}

}  // namespace hctlab
