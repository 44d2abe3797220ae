#pragma once

// Folded (absolute-value) Gaussian laws. The two-point mixture puts weight
// 1-eps on |N(0,1)| and weight eps on |N(tau,1)|.

namespace hctlab {

// Survival of a folded normal, P(|N(mu,1)| > t) = Phi_bar(t-mu) + Phi_bar(t+mu),
// for t >= 0. Throws std::domain_error for t < 0.
double folded_normal_sf(double mu, double t);

struct FoldedMixture {
  double epsilon = 0.0;  // mixing weight in [0,1]
  double tau = 0.0;      // noncentrality, >= 0

  // G(t) = (1-eps)*Psi_0(t) + eps*Psi_tau(t), t >= 0.
  double cdf(double t) const;
  // 1 - G(t), computed from survival terms (tail-safe).
  double survival(double t) const;
  // g(t) = (1-eps)*2*phi(t) + eps*(phi(t-tau) + phi(t+tau)).
  double density(double t) const;
};

}  // namespace hctlab
