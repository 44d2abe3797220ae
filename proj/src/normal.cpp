#include "hctlab/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hctlab {

namespace {

constexpr double inv_sqrt_2pi = 0.398942280401432677939946059934;
constexpr double inv_sqrt2 = 0.707106781186547524400844362105;

double rat_eval(const double* num, int n_num, const double* den, int n_den,
                double x) {
  double u = num[n_num - 1];
  for (int i = n_num - 1; i > 0; --i) u = x * u + num[i - 1];
  double v = den[n_den - 1];
  for (int j = n_den - 1; j > 0; --j) v = x * v + den[j - 1];
  return u / v;
}

// Wichura's AS 241 (PPND16) rational approximations for the lower-tail
// normal quantile; accurate to ~1e-16 over the double range.
double cdf_inv_initial(double p) {
  const double dp = p - 0.5;
  if (std::fabs(dp) <= 0.425) {
    static const double a[8] = {3.387132872796366608,  133.14166789178437745,
                                1971.5909503065514427, 13731.693765509461125,
                                45921.953931549871457, 67265.770927008700853,
                                33430.575583588128105, 2509.0809287301226727};
    static const double b[8] = {1.0,
                                42.313330701600911252,
                                687.1870074920579083,
                                5394.1960214247511077,
                                21213.794301586595867,
                                39307.89580009271061,
                                28729.085735721942674,
                                5226.495278852854561};
    return dp * rat_eval(a, 8, b, 8, 0.180625 - dp * dp);
  }
  const double pp = (p < 0.5) ? p : 1.0 - p;
  const double rr = std::sqrt(-std::log(pp));
  double x;
  if (rr <= 5.0) {
    static const double a[8] = {
        1.42343711074968357734,   4.6303378461565452959,
        5.7694972214606914055,    3.64784832476320460504,
        1.27045825245236838258,   0.24178072517745061177,
        0.0227238449892691845833, 7.7454501427834140764e-4};
    static const double b[8] = {1.0,
                                2.05319162663775882187,
                                1.6763848301838038494,
                                0.68976733498510000455,
                                0.14810397642748007459,
                                0.0151986665636164571966,
                                5.475938084995344946e-4,
                                1.05075007164441684324e-9};
    x = rat_eval(a, 8, b, 8, rr - 1.6);
  } else {
    static const double a[8] = {
        6.6579046435011037772,     5.4637849111641143699,
        1.7848265399172913358,     0.29656057182850489123,
        0.026532189526576123093,   0.0012426609473880784386,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double b[8] = {1.0,
                                0.59983220655588793769,
                                0.13692988092273580531,
                                0.0148753612908506148525,
                                7.868691311456132591e-4,
                                1.8463183175100546818e-5,
                                1.4215117583164458887e-7,
                                2.04426310338993978564e-15};
    x = rat_eval(a, 8, b, 8, rr - 5.0);
  }
  return (p < 0.5) ? -x : x;
}

}  // namespace

double norm_pdf(double x) {
  if (std::isinf(x)) return 0.0;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return 0.5 * std::erfc(-x * inv_sqrt2);
}

double norm_sf(double x) {
  if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
  return 0.5 * std::erfc(x * inv_sqrt2);
}

double norm_sf_inv(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error("norm_sf_inv: q must lie in (0,1)");
  // survival inverse = -(cdf inverse)
  double t = -cdf_inv_initial(q);
  for (int pass = 0; pass < 2; ++pass) {
    const double density = norm_pdf(t);
    if (!(density > std::numeric_limits<double>::min())) break;
    const double step = (norm_sf(t) - q) / density;
    if (!std::isfinite(step)) break;
    t += step;
  }
  return t;
}

}  // namespace hctlab
