#pragma once

#include <optional>
#include <string_view>

// Threshold nonlinearities applied to z-scores and closed-form moments of
// thresholded Gaussians.
//
// With W ~ N(0,1), Z = mu + W, a = t - mu, b = t + mu, the implemented
// moment identities are (Phi_bar = normal survival, phi = normal density):
//
//   clip:  E eta   = Phi_bar(a) - Phi_bar(b)
//          E eta^2 = Phi_bar(a) + Phi_bar(b)
//   hard:  E eta   = mu*(Phi_bar(a) + Phi_bar(b)) + phi(a) - phi(b)
//          E eta^2 = (1 + mu^2)*(Phi_bar(a) + Phi_bar(b))
//                    + (t + mu)*phi(a) + (t - mu)*phi(b)
//   soft:  E eta   = (mu - t)*Phi_bar(a) + phi(a)
//                    + (mu + t)*Phi_bar(b) - phi(b)
//          E eta^2 = (1 + a^2)*Phi_bar(a) - a*phi(a)
//                    + (1 + b^2)*Phi_bar(b) - b*phi(b)
//
// They follow from the truncated Gaussian identities
// E[1{W>a}] = Phi_bar(a), E[W; W>a] = phi(a), E[W^2; W>a] = Phi_bar(a)+a*phi(a)
// applied to the two selection events {Z > t} and {Z < -t}. Each closed form
// is unit-locked against adaptive quadrature.

namespace hctlab {

enum class ThresholdKind { Clip, Hard, Soft };

const char* to_string(ThresholdKind kind);
std::optional<ThresholdKind> threshold_kind_from_string(std::string_view name);

// eta_t(z). clip: sgn(z)*1{|z|>t}; hard: z*1{|z|>t}; soft: sgn(z)*(|z|-t)+.
// Requires t >= 0.
double apply_threshold(ThresholdKind kind, double t, double z);

// E eta_t^order(mu + W), order in {1, 2}. Throws std::domain_error for t < 0
// or an order outside {1, 2}.
double threshold_moment(ThresholdKind kind, double t, double mu, int order);

}  // namespace hctlab
