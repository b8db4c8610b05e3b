#pragma once

// Distribution mathematics used by the samplers: log-densities, CDFs,
// quantiles and variate generation for the gamma, inverse-gamma, normal,
// lognormal, Poisson and uniform families. Every function rejects invalid
// parameters with DomainError instead of returning NaN.

#include <cstdint>

#include "carinfo/rng.hpp"

namespace carinfo {

/// Gam(shape, rate): mean shape/rate. In a Poisson-gamma model the shape is
/// the prior number of events and the rate the prior person-time.
class GammaParams {
 public:
  GammaParams(double shape, double rate);

  double shape() const noexcept { return shape_; }
  double rate() const noexcept { return rate_; }
  double mean() const noexcept { return shape_ / rate_; }
  double variance() const noexcept { return shape_ / (rate_ * rate_); }

  friend bool operator==(const GammaParams&, const GammaParams&) = default;

 private:
  double shape_;
  double rate_;
};

/// LN(mu, sigma2) on the rate scale: log X ~ N(mu, sigma2).
class LognormalParams {
 public:
  LognormalParams(double mu, double sigma2);

  double mu() const noexcept { return mu_; }
  double sigma2() const noexcept { return sigma2_; }
  double mean() const;
  double variance() const;

  friend bool operator==(const LognormalParams&, const LognormalParams&) = default;

 private:
  double mu_;
  double sigma2_;
};

/// IG(shape, scale): density proportional to x^(-shape-1) exp(-scale/x).
class InverseGammaParams {
 public:
  InverseGammaParams(double shape, double scale);

  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }
  double mode() const noexcept { return scale_ / (shape_ + 1.0); }

 private:
  double shape_;
  double scale_;
};

// --- special functions -------------------------------------------------------

/// log Gamma(x) for x > 0; re-entrant (does not touch the global signgam).
double log_gamma_fn(double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly.
double gamma_q(double a, double x);

// --- densities, CDFs, quantiles ------------------------------------------------

double gamma_log_pdf(const GammaParams& g, double x);
double gamma_cdf(const GammaParams& g, double x);

/// x >= 0 with gamma_cdf(g, x) == p; Newton iteration guarded by a bisection
/// bracket. Requires 0 < p < 1.
double gamma_quantile(const GammaParams& g, double p);

double inverse_gamma_log_pdf(const InverseGammaParams& ig, double x);
double inverse_gamma_cdf(const InverseGammaParams& ig, double x);
double inverse_gamma_quantile(const InverseGammaParams& ig, double p);

double normal_log_pdf(double x, double mean, double sd);
double normal_cdf(double x);
/// Standard normal quantile (Wichura's AS241, ~1e-16 relative accuracy).
double normal_quantile(double p);

double lognormal_log_pdf(const LognormalParams& ln, double x);
double poisson_log_pmf(std::int64_t k, double mean);

// --- variates --------------------------------------------------------------------

double draw_uniform(RngStream& rng, double lo, double hi);
double draw_normal(RngStream& rng, double mean, double sd);
double draw_lognormal(RngStream& rng, const LognormalParams& ln);

/// Marsaglia-Tsang squeeze/rejection; shapes below one are boosted through
/// Gam(a + 1) * U^(1/a). Results are clamped to the smallest normal double so
/// that log(x) is always finite.
double draw_gamma(RngStream& rng, const GammaParams& g);
double draw_inverse_gamma(RngStream& rng, const InverseGammaParams& ig);

/// Multiplication method below mean 10, Hormann's PTRS above.
std::int64_t draw_poisson(RngStream& rng, double mean);

// --- truncated variates -------------------------------------------------------------

/// N(mean, sd^2) restricted to (lo, hi) by inverse-CDF sampling.
double draw_truncated_normal(RngStream& rng, double mean, double sd, double lo, double hi);

/// Gam(shape, rate) restricted to (0, upper). Plain rejection for up to
/// `max_attempts` draws, then inverse-CDF on the truncated region.
double draw_gamma_below(RngStream& rng, const GammaParams& g, double upper, int max_attempts = 1000);

/// IG(shape, scale) restricted to (lower, inf); same strategy as draw_gamma_below.
/// Throws SamplerError naming `lower` if no admissible value can be produced.
double draw_inverse_gamma_above(RngStream& rng, const InverseGammaParams& ig, double lower,
                                int max_attempts = 1000);

}  // namespace carinfo
