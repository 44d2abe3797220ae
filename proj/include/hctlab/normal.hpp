#pragma once

// Standard normal primitives.
//
// Tail probabilities go through the complementary error function; survival
// values are never formed as 1 - cdf, which would cancel catastrophically in
// the deep tail. Max relative error of norm_sf is ~4 ulp of erfc for
// |x| <= 8 and stays below 1e-10 out to |x| ~ 37; past that the result
// itself falls into the subnormal range and precision is capped by the
// floating-point format.

namespace hctlab {

// Density of N(0,1).
double norm_pdf(double x);

// P(N(0,1) <= x).
double norm_cdf(double x);

// P(N(0,1) > x), complement-function evaluation.
double norm_sf(double x);

// Inverse of norm_sf on (0,1): rational initial approximation polished by
// Newton steps on norm_sf. Throws std::domain_error for q outside (0,1).
double norm_sf_inv(double q);

}  // namespace hctlab
