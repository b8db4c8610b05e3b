#include "carinfo/approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "carinfo/error.hpp"

namespace carinfo {
namespace {

// Below this log-variance 1/(exp(v) - 1) is dominated by rounding noise.
constexpr double kMinLogVariance = 1e-12;

}  // namespace

InformativenessQuery::InformativenessQuery(double sigma2, double tau2, int m0)
    : sigma2_(sigma2), tau2_(tau2), m0_(m0) {
  if (!(std::isfinite(sigma2) && sigma2 > 0.0) || !(std::isfinite(tau2) && tau2 > 0.0)) {
    throw DomainError("InformativenessQuery: sigma2 and tau2 must be positive (sigma2=" + std::to_string(sigma2) +
                      ", tau2=" + std::to_string(tau2) + ")");
  }
  if (m0 < 1) throw DomainError("InformativenessQuery: m0 must be >= 1, got " + std::to_string(m0));
}

double InformativenessQuery::conditional_variance() const noexcept {
  return sigma2_ + (sigma2_ + tau2_) / static_cast<double>(m0_);
}

LognormalParams gamma_to_lognormal(const GammaParams& g) {
  const double sigma2 = std::log1p(1.0 / g.shape());
  const double mu = std::log(g.shape() / g.rate()) - 0.5 * sigma2;
  return {mu, sigma2};
}

double matched_gamma_shape(double log_variance) {
  if (!(log_variance >= kMinLogVariance) || !std::isfinite(log_variance)) {
    throw OverflowError("effective prior events overflow: log-scale variance " + std::to_string(log_variance) +
                        " is below 1e-12");
  }
  return 1.0 / std::expm1(log_variance);
}

GammaParams lognormal_to_gamma(const LognormalParams& ln) {
  double a;
  try {
    a = matched_gamma_shape(ln.sigma2());
  } catch (const OverflowError&) {
    throw OverflowError("lognormal_to_gamma: shape overflows for sigma2=" + std::to_string(ln.sigma2()));
  }
  const double b = a / std::exp(ln.mu() + 0.5 * ln.sigma2());
  if (!std::isfinite(b) || !(b > 0.0)) {
    throw OverflowError("lognormal_to_gamma: rate not representable for mu=" + std::to_string(ln.mu()) +
                        ", sigma2=" + std::to_string(ln.sigma2()));
  }
  return {a, b};
}

double conditional_precision_bound(const InformativenessQuery& q) { return 1.0 / q.conditional_variance(); }

EffectivePriorEvents informativeness(const InformativenessQuery& q) {
  return {matched_gamma_shape(q.conditional_variance()), q.m0()};
}

// a_hat < cap  <=>  sigma2 (m0 + 1) / m0 + tau2 / m0 > log(1 + 1/cap).
double min_sigma2_for_cap(double tau2, int m0, double a_cap) {
  if (!(a_cap > 0.0)) throw DomainError("informativeness cap must be positive");
  const double m = static_cast<double>(m0);
  const double threshold = std::log1p(1.0 / a_cap);
  return std::max(0.0, (m * threshold - tau2) / (m + 1.0));
}

double min_tau2_for_cap(double sigma2, int m0, double a_cap) {
  if (!(a_cap > 0.0)) throw DomainError("informativeness cap must be positive");
  const double m = static_cast<double>(m0);
  const double threshold = std::log1p(1.0 / a_cap);
  return std::max(0.0, m * threshold - sigma2 * (m + 1.0));
}

}  // namespace carinfo
