#pragma once

// Gamma <-> lognormal moment matching and the informativeness of the BYM
// model expressed as an effective number of prior events.

#include "carinfo/distributions.hpp"

namespace carinfo {

/// Baseline neighbour count at which informativeness is reported by default.
inline constexpr int kDefaultBaselineNeighbors = 3;

/// (sigma2, tau2, m0) for the informativeness measure: sigma2 is the
/// non-spatial log-scale variance, tau2 the ICAR conditional variance scale and
/// m0 the neighbour count of the region being described.
class InformativenessQuery {
 public:
  InformativenessQuery(double sigma2, double tau2, int m0 = kDefaultBaselineNeighbors);

  double sigma2() const noexcept { return sigma2_; }
  double tau2() const noexcept { return tau2_; }
  int m0() const noexcept { return m0_; }

  /// Lower bound on the conditional log-scale variance: sigma2 + (sigma2 + tau2) / m0.
  double conditional_variance() const noexcept;

 private:
  double sigma2_;
  double tau2_;
  int m0_;
};

/// Effective number of prior events, always reported with the m0 it refers to.
struct EffectivePriorEvents {
  double a_hat;
  int m0;
};

/// Lognormal with the same mean and variance as `g`:
/// sigma2 = log(1 + 1/a), mu = log(a/b) - sigma2/2.
LognormalParams gamma_to_lognormal(const GammaParams& g);

/// Inverse of gamma_to_lognormal: a = 1/(exp(sigma2) - 1), b = a / exp(mu + sigma2/2).
/// Throws OverflowError when sigma2 is too small for `a` to be representable.
GammaParams lognormal_to_gamma(const LognormalParams& ln);

/// Shape of the moment-matched gamma for a log-scale variance: 1/(exp(v) - 1).
/// Throws OverflowError when v < 1e-12.
double matched_gamma_shape(double log_variance);

/// 1 / (sigma2 + (sigma2 + tau2) / m0). The bound is attained when a region
/// neighbours every other region; the conditional precision rises towards
/// 1 / (sigma2 + tau2 / m) as the neighbours' rates become well determined.
double conditional_precision_bound(const InformativenessQuery& q);

/// a_hat = 1 / (exp(sigma2 + (sigma2 + tau2) / m0) - 1).
EffectivePriorEvents informativeness(const InformativenessQuery& q);

/// Smallest sigma2 keeping informativeness(sigma2, tau2, m0) strictly below
/// `a_cap`; zero when every sigma2 > 0 qualifies.
double min_sigma2_for_cap(double tau2, int m0, double a_cap);

/// Smallest tau2 keeping informativeness(sigma2, tau2, m0) strictly below `a_cap`.
double min_tau2_for_cap(double sigma2, int m0, double a_cap);

}  // namespace carinfo
