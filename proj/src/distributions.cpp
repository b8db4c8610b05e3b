#include "carinfo/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "carinfo/error.hpp"

namespace carinfo {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void require_probability(double p, const char* fn) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(fn) + ": probability must lie in (0, 1), got " + std::to_string(p));
  }
}

// Series expansion of P(a, x); converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < 100000; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - log_gamma_fn(a));
}

// Lentz continued fraction for Q(a, x); converges quickly for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double kFloor = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kFloor;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kFloor) d = kFloor;
    c = b + an / c;
    if (std::fabs(c) < kFloor) c = kFloor;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma_fn(a)) * h;
}

double unit_gamma_log_pdf(double a, double t) {
  return (a - 1.0) * std::log(t) - t - log_gamma_fn(a);
}

// Solves P(a, t) = p for t in (0, upper). For p above one half the residual is
// formed from Q to keep precision in the upper tail.
double unit_gamma_inverse(double a, double p, double upper) {
  const bool upper_tail = p > 0.5;
  const double target = upper_tail ? 1.0 - p : p;
  auto residual = [&](double t) {
    return upper_tail ? target - gamma_q(a, t) : gamma_p(a, t) - target;
  };

  double lo = 0.0;
  double hi = upper;
  if (!std::isfinite(hi)) {
    hi = std::max(1.0, a);
    while (residual(hi) < 0.0) hi *= 2.0;
  }

  // Wilson-Hilferty starting point.
  const double z = normal_quantile(p);
  const double v = 1.0 / (9.0 * a);
  double t = a * std::pow(1.0 - v + z * std::sqrt(v), 3.0);
  if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);

  const double tolerance = 1e-14 * std::max(target, 1e-290);
  for (int iter = 0; iter < 400; ++iter) {
    const double f = residual(t);
    if (std::fabs(f) <= tolerance) break;
    if (f < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    if (hi - lo <= 4.0 * kEps * t) break;

    double next = t - f / std::exp(unit_gamma_log_pdf(a, t));
    if (!(next > lo && next < hi)) {
      // Newton left the bracket: bisect, geometrically when the bracket spans decades.
      if (lo > 0.0 && hi / lo > 4.0) {
        next = std::sqrt(lo * hi);
      } else if (lo == 0.0) {
        next = hi / 16.0;
      } else {
        next = 0.5 * (lo + hi);
      }
    }
    t = next;
  }
  return t;
}

}  // namespace

GammaParams::GammaParams(double shape, double rate) : shape_(shape), rate_(rate) {
  if (!positive_finite(shape) || !positive_finite(rate)) {
    throw DomainError("GammaParams: shape and rate must be positive and finite (shape=" +
                      std::to_string(shape) + ", rate=" + std::to_string(rate) + ")");
  }
}

LognormalParams::LognormalParams(double mu, double sigma2) : mu_(mu), sigma2_(sigma2) {
  if (!std::isfinite(mu) || !positive_finite(sigma2)) {
    throw DomainError("LognormalParams: mu must be finite and sigma2 positive (mu=" + std::to_string(mu) +
                      ", sigma2=" + std::to_string(sigma2) + ")");
  }
}

double LognormalParams::mean() const { return std::exp(mu_ + 0.5 * sigma2_); }

double LognormalParams::variance() const { return std::expm1(sigma2_) * std::exp(2.0 * mu_ + sigma2_); }

InverseGammaParams::InverseGammaParams(double shape, double scale) : shape_(shape), scale_(scale) {
  if (!positive_finite(shape) || !positive_finite(scale)) {
    throw DomainError("InverseGammaParams: shape and scale must be positive and finite (shape=" +
                      std::to_string(shape) + ", scale=" + std::to_string(scale) + ")");
  }
}

double log_gamma_fn(double x) {
  if (!positive_finite(x)) throw DomainError("log_gamma_fn: argument must be positive");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double gamma_p(double a, double x) {
  if (!positive_finite(a) || !(x >= 0.0) || std::isnan(x)) throw DomainError("gamma_p: invalid arguments");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
  if (!positive_finite(a) || !(x >= 0.0) || std::isnan(x)) throw DomainError("gamma_q: invalid arguments");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double gamma_log_pdf(const GammaParams& g, double x) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  const double a = g.shape();
  const double b = g.rate();
  return a * std::log(b) - log_gamma_fn(a) + (a - 1.0) * std::log(x) - b * x;
}

double gamma_cdf(const GammaParams& g, double x) {
  if (!(x > 0.0)) return 0.0;
  return gamma_p(g.shape(), g.rate() * x);
}

double gamma_quantile(const GammaParams& g, double p) {
  require_probability(p, "gamma_quantile");
  return unit_gamma_inverse(g.shape(), p, std::numeric_limits<double>::infinity()) / g.rate();
}

double inverse_gamma_log_pdf(const InverseGammaParams& ig, double x) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  const double a = ig.shape();
  const double s = ig.scale();
  return a * std::log(s) - log_gamma_fn(a) - (a + 1.0) * std::log(x) - s / x;
}

double inverse_gamma_cdf(const InverseGammaParams& ig, double x) {
  if (!(x > 0.0)) return 0.0;
  return gamma_q(ig.shape(), ig.scale() / x);
}

double inverse_gamma_quantile(const InverseGammaParams& ig, double p) {
  require_probability(p, "inverse_gamma_quantile");
  return ig.scale() / unit_gamma_inverse(ig.shape(), 1.0 - p, std::numeric_limits<double>::infinity());
}

double normal_log_pdf(double x, double mean, double sd) {
  if (!positive_finite(sd)) throw DomainError("normal_log_pdf: sd must be positive");
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  require_probability(p, "normal_quantile");
  const double q = p - 0.5;
  double r;
  double value;
  if (std::fabs(q) <= 0.425) {
    r = 0.180625 - q * q;
    value = q *
            (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
                 45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
              133.14166789178437745) * r + 3.387132872796366608) /
            (((((((r * 5226.495278852545925 + 28729.085735721942674) * r + 39307.89580009271061) * r +
                 21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
              42.313330701600911252) * r + 1.0);
    return value;
  }
  r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                 1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
              4.6303378461565452959) * r + 1.42343711074968357734) /
            (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                 0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
              2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                 0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
              5.4637849111641143699) * r + 6.6579046435011037772) /
            (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                 7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
              0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

double lognormal_log_pdf(const LognormalParams& ln, double x) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  const double lx = std::log(x);
  return normal_log_pdf(lx, ln.mu(), std::sqrt(ln.sigma2())) - lx;
}

double poisson_log_pmf(std::int64_t k, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("poisson_log_pmf: mean must be finite and >= 0");
  if (k < 0) return -std::numeric_limits<double>::infinity();
  if (mean == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  const auto kd = static_cast<double>(k);
  return kd * std::log(mean) - mean - log_gamma_fn(kd + 1.0);
}

double draw_uniform(RngStream& rng, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("draw_uniform: need finite lo < hi");
  }
  return lo + (hi - lo) * rng.uniform_open();
}

double draw_normal(RngStream& rng, double mean, double sd) {
  if (!std::isfinite(mean) || !positive_finite(sd)) throw DomainError("draw_normal: invalid mean or sd");
  // Marsaglia polar method; the second variate of the pair is discarded so the
  // stream carries no hidden state.
  double u;
  double v;
  double s;
  do {
    u = 2.0 * rng.uniform_open() - 1.0;
    v = 2.0 * rng.uniform_open() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return mean + sd * u * std::sqrt(-2.0 * std::log(s) / s);
}

double draw_lognormal(RngStream& rng, const LognormalParams& ln) {
  return std::exp(draw_normal(rng, ln.mu(), std::sqrt(ln.sigma2())));
}

double draw_gamma(RngStream& rng, const GammaParams& g) {
  double a = g.shape();
  double boost_log = 0.0;
  if (a < 1.0) {
    boost_log = std::log(rng.uniform_open()) / a;
    a += 1.0;
  }
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  double unit;
  for (;;) {
    double x;
    double v;
    do {
      x = draw_normal(rng, 0.0, 1.0);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      unit = d * v;
      break;
    }
  }
  const double value = std::exp(std::log(unit) + boost_log) / g.rate();
  return std::max(value, kTiny);
}

double draw_inverse_gamma(RngStream& rng, const InverseGammaParams& ig) {
  return ig.scale() / draw_gamma(rng, GammaParams(ig.shape(), 1.0));
}

std::int64_t draw_poisson(RngStream& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("draw_poisson: mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double prod = rng.uniform_open();
    while (prod > limit) {
      prod *= rng.uniform_open();
      ++k;
    }
    return k;
  }
  // PTRS: transformed rejection with squeeze (Hormann 1993).
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform_open() - 0.5;
    const double v = rng.uniform_open();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - log_gamma_fn(k + 1.0)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

double draw_truncated_normal(RngStream& rng, double mean, double sd, double lo, double hi) {
  if (!std::isfinite(mean) || !positive_finite(sd) || !(lo < hi)) {
    throw DomainError("draw_truncated_normal: invalid parameters");
  }
  double a = (lo - mean) / sd;
  double b = (hi - mean) / sd;
  // Work in the lower tail where the CDF keeps its relative precision.
  const bool flip = a > 0.0;
  if (flip) {
    const double t = a;
    a = -b;
    b = -t;
  }
  const double pa = normal_cdf(a);
  const double pb = normal_cdf(b);
  if (!(pb > pa)) {
    throw SamplerError("draw_truncated_normal: interval (" + std::to_string(lo) + ", " + std::to_string(hi) +
                       ") carries no numerically representable mass");
  }
  double z = normal_quantile(std::clamp(pa + (pb - pa) * rng.uniform_open(), kTiny, 1.0 - kEps / 2));
  z = std::clamp(z, a, b);
  if (flip) z = -z;
  const double x = mean + sd * z;
  return std::clamp(x, std::nextafter(lo, hi), std::nextafter(hi, lo));
}

double draw_gamma_below(RngStream& rng, const GammaParams& g, double upper, int max_attempts) {
  if (!(upper > 0.0)) throw DomainError("draw_gamma_below: upper bound must be positive");
  if (std::isinf(upper)) return draw_gamma(rng, g);
  for (int i = 0; i < max_attempts; ++i) {
    const double x = draw_gamma(rng, g);
    if (x < upper) return x;
  }
  const double t_max = upper * g.rate();
  const double mass = gamma_p(g.shape(), t_max);
  if (!(mass > 1e-300)) {
    throw SamplerError("truncated gamma draw failed: no mass below boundary " + std::to_string(upper) +
                       " (shape=" + std::to_string(g.shape()) + ", rate=" + std::to_string(g.rate()) + ")");
  }
  const double u = mass * rng.uniform_open();
  const double t = unit_gamma_inverse(g.shape(), u, t_max);
  const double x = std::max(t / g.rate(), kTiny);
  return std::min(x, std::nextafter(upper, 0.0));
}

double draw_inverse_gamma_above(RngStream& rng, const InverseGammaParams& ig, double lower, int max_attempts) {
  if (!(lower > 0.0)) return draw_inverse_gamma(rng, ig);
  // X = scale / G with G ~ Gam(shape, 1); X > lower  <=>  G < scale / lower.
  const double g_upper = ig.scale() / lower;
  if (!(g_upper > 0.0) || !std::isfinite(g_upper)) {
    throw SamplerError("truncated inverse-gamma draw failed at boundary " + std::to_string(lower));
  }
  double x;
  try {
    x = ig.scale() / draw_gamma_below(rng, GammaParams(ig.shape(), 1.0), g_upper, max_attempts);
  } catch (const SamplerError&) {
    throw SamplerError("truncated inverse-gamma draw failed: no mass above boundary " + std::to_string(lower) +
                       " (shape=" + std::to_string(ig.shape()) + ", scale=" + std::to_string(ig.scale()) + ")");
  }
  return std::max(x, std::nextafter(lower, std::numeric_limits<double>::infinity()));
}

}  // namespace carinfo
