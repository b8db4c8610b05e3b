// Special functions, densities, quantiles and variate generators. Reference
// values were computed with mpmath at 40 digits or scipy.stats and frozen here.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "carinfo/distributions.hpp"
#include "carinfo/error.hpp"
#include "carinfo/rng.hpp"

using namespace carinfo;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

template <class F>
std::vector<double> sample(std::size_t count, F draw) {
  std::vector<double> xs(count);
  for (auto& x : xs) x = draw();
  return xs;
}

double mean_of(const std::vector<double>& xs) { return std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size(); }

double var_of(const std::vector<double>& xs) {
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / (xs.size() - 1);
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(42, 0);
  RngStream b(42, 0);
  RngStream c(42, 1);
  RngStream d(43, 0);
  bool all_equal = true;
  bool differs_c = false;
  bool differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    all_equal = all_equal && x == b.next_u64();
    differs_c = differs_c || x != c.next_u64();
    differs_d = differs_d || x != d.next_u64();
  }
  CHECK(all_equal);
  CHECK(differs_c);
  CHECK(differs_d);
  CHECK(RngStream::derive_stream_id(7, 0) != RngStream::derive_stream_id(7, 1));
  CHECK(RngStream::derive_stream_id(7, 1) == RngStream::derive_stream_id(7, 1));
}

TEST_CASE("uniform_open stays strictly inside (0, 1)") {
  RngStream rng(1, 0);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double u = rng.uniform_open();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
}

TEST_CASE("log gamma and regularized incomplete gamma") {
  CHECK(log_gamma_fn(0.5) == doctest::Approx(0.57236494292470009).epsilon(1e-14));
  CHECK(log_gamma_fn(100.3) == doctest::Approx(360.51470572905812).epsilon(1e-14));
  CHECK(log_gamma_fn(1e-5) == doctest::Approx(11.512919692895826).epsilon(1e-13));

  struct Case {
    double a, x, p;
  };
  const Case cases[] = {{0.5, 0.1, 0.34527915398142298},   {2.5, 3.0, 0.6937810815867216},
                        {15.0, 15.0, 0.53434629105599037},  {100.0, 90.0, 0.15822098918643017},
                        {8.75, 5.0, 0.081242965549366946},  {1e-3, 1e-4, 0.99140311966744336},
                        {50.0, 80.0, 0.99986921602340859}};
  for (const auto& c : cases) {
    CAPTURE(c.a);
    CAPTURE(c.x);
    CHECK(rel(gamma_p(c.a, c.x), c.p) < 1e-12);
    CHECK(rel(gamma_q(c.a, c.x), 1.0 - c.p) < 1e-10);
  }
  CHECK(rel(gamma_q(50.0, 80.0), 0.00013078397659141034) < 1e-11);
  CHECK(gamma_p(3.0, 0.0) == 0.0);
  CHECK_THROWS_AS(gamma_p(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gamma_p(1.0, -1.0), DomainError);
}

TEST_CASE("gamma quantile inverts the cdf") {
  struct Case {
    double a, b, p, q;
  };
  const Case cases[] = {{15, 30000, 0.5, 0.0004889338586110265},      {15, 30000, 0.025, 0.0002798462044261105},
                        {15, 30000, 0.975, 0.0007829873707278526},    {8.75, 37500, 0.5, 0.00022450717621917495},
                        {28.75, 57500, 0.5, 0.0004942149996659386},   {0.1, 1, 0.01, 6.073048362407912e-21},
                        {0.1, 1, 0.5, 0.0005933911044602284},         {200, 1, 0.999, 246.5658793699739},
                        {9.75, 20000, 0.025, 0.00023119067374069321}};
  for (const auto& c : cases) {
    CAPTURE(c.a);
    CAPTURE(c.p);
    const GammaParams g(c.a, c.b);
    const double q = gamma_quantile(g, c.p);
    CHECK(rel(q, c.q) < 1e-9);
    CHECK(std::abs(gamma_cdf(g, q) - c.p) < 1e-12);
  }
  CHECK(gamma_quantile(GammaParams(1, 1), 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(rel(gamma_quantile(GammaParams(18.75, 37500), 0.975), 0.0007504284064016395) < 1e-9);
  CHECK_THROWS_AS(gamma_quantile(GammaParams(2, 1), 0.0), DomainError);
  CHECK_THROWS_AS(gamma_quantile(GammaParams(2, 1), 1.0), DomainError);
  CHECK_THROWS_AS(gamma_quantile(GammaParams(2, 1), 1.5), DomainError);
}

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845400539).epsilon(1e-14));
  CHECK(normal_quantile(0.025) == doctest::Approx(-1.9599639845400542).epsilon(1e-14));
  CHECK(normal_quantile(1e-10) == doctest::Approx(-6.3613409024040562).epsilon(1e-13));
  CHECK(normal_quantile(0.999999) == doctest::Approx(4.7534243088170878).epsilon(1e-12));
  CHECK(normal_quantile(0.3) == doctest::Approx(-0.52440051270804082).epsilon(1e-14));
  CHECK(rel(normal_cdf(-3.0), 0.0013498980316300945) < 1e-13);
  CHECK(rel(normal_cdf(0.5), 0.6914624612740131) < 1e-14);
  CHECK(rel(normal_cdf(1.96), 0.97500210485177956) < 1e-14);
  CHECK(rel(normal_cdf(-10.0), 7.6198530241605261e-24) < 1e-12);
}

TEST_CASE("log densities") {
  CHECK(gamma_log_pdf(GammaParams(15, 30000), 4e-4) == doctest::Approx(7.9064245749376153).epsilon(1e-13));
  CHECK(normal_log_pdf(1.3, 0.2, 0.7) == doctest::Approx(-1.796957466816961).epsilon(1e-14));
  CHECK(lognormal_log_pdf(LognormalParams(0.1, 0.3), 2.0) == doctest::Approx(-1.5964719412786703).epsilon(1e-14));
  CHECK(poisson_log_pmf(7, 3.2) == doctest::Approx(-3.583105692425648).epsilon(1e-14));
  CHECK(poisson_log_pmf(0, 0.0) == 0.0);
  CHECK(std::isinf(poisson_log_pmf(1, 0.0)));
  const InverseGammaParams ig(3.0, 2.0);
  CHECK(inverse_gamma_log_pdf(ig, 1.0) == doctest::Approx(-0.6137056388801095).epsilon(1e-14));
  CHECK(rel(inverse_gamma_cdf(ig, 1.0), 0.67667641618306346) < 1e-13);
  CHECK(rel(inverse_gamma_quantile(ig, 0.5), 0.7479262863802246) < 1e-10);
  CHECK(ig.mode() == doctest::Approx(0.5));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(GammaParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(GammaParams(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(GammaParams(std::nan(""), 1.0), DomainError);
  CHECK_THROWS_AS(LognormalParams(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(LognormalParams(INFINITY, 1.0), DomainError);
  CHECK_THROWS_AS(InverseGammaParams(1.0, 0.0), DomainError);
  const LognormalParams ln(-1.0, 0.5);
  CHECK(ln.mean() == doctest::Approx(std::exp(-0.75)).epsilon(1e-15));
  CHECK(ln.variance() == doctest::Approx(std::expm1(0.5) * std::exp(-1.5)).epsilon(1e-14));
}

TEST_CASE("gamma variates match their moments") {
  RngStream rng(11, 0);
  for (double shape : {0.3, 1.0, 8.75, 250.0}) {
    CAPTURE(shape);
    const GammaParams g(shape, 2.0);
    const auto xs = sample(200000, [&] { return draw_gamma(rng, g); });
    const double se = std::sqrt(g.variance() / xs.size());
    CHECK(std::abs(mean_of(xs) - g.mean()) < 4.0 * se);
    CHECK(rel(var_of(xs), g.variance()) < 0.05);
    CHECK(*std::min_element(xs.begin(), xs.end()) > 0.0);
  }
}

TEST_CASE("normal, inverse gamma and poisson variates match their moments") {
  RngStream rng(12, 0);
  const auto zs = sample(200000, [&] { return draw_normal(rng, 1.5, 2.0); });
  CHECK(std::abs(mean_of(zs) - 1.5) < 4.0 * 2.0 / std::sqrt(200000.0));
  CHECK(rel(var_of(zs), 4.0) < 0.02);

  const InverseGammaParams ig(5.0, 2.0);  // mean 0.5, variance 1/12
  const auto ws = sample(200000, [&] { return draw_inverse_gamma(rng, ig); });
  CHECK(std::abs(mean_of(ws) - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / 200000.0));

  for (double mean : {0.0, 0.7, 9.9, 10.0, 250.0}) {
    CAPTURE(mean);
    const auto ks = sample(100000, [&] { return static_cast<double>(draw_poisson(rng, mean)); });
    if (mean == 0.0) {
      CHECK(*std::max_element(ks.begin(), ks.end()) == 0.0);
      continue;
    }
    CHECK(std::abs(mean_of(ks) - mean) < 4.0 * std::sqrt(mean / 100000.0));
    CHECK(rel(var_of(ks), mean) < 0.04);
  }
}

TEST_CASE("poisson variates match the pmf") {
  RngStream rng(13, 0);
  for (double mean : {3.0, 25.0}) {
    CAPTURE(mean);
    const int draws = 200000;
    std::vector<int> counts(200, 0);
    for (int i = 0; i < draws; ++i) {
      const auto k = draw_poisson(rng, mean);
      if (k < 200) ++counts[k];
    }
    double chi2 = 0.0;
    int cells = 0;
    for (int k = 0; k < 200; ++k) {
      const double expect = draws * std::exp(poisson_log_pmf(k, mean));
      if (expect < 20.0) continue;
      chi2 += (counts[k] - expect) * (counts[k] - expect) / expect;
      ++cells;
    }
    // 99.9th percentile of chi-square is below df + 5 sqrt(2 df) for these df.
    CHECK(chi2 < cells + 5.0 * std::sqrt(2.0 * cells));
  }
}

TEST_CASE("truncated draws respect their bounds and shapes") {
  RngStream rng(14, 0);
  const auto tn = sample(50000, [&] { return draw_truncated_normal(rng, 0.0, 1.0, 1.0, 2.0); });
  CHECK(*std::min_element(tn.begin(), tn.end()) >= 1.0);
  CHECK(*std::max_element(tn.begin(), tn.end()) <= 2.0);
  // E[Z | 1 < Z < 2] = (phi(1) - phi(2)) / (Phi(2) - Phi(1)) = 1.3832...
  CHECK(std::abs(mean_of(tn) - 1.3832) < 0.01);

  const auto far = sample(1000, [&] { return draw_truncated_normal(rng, -30.0, 1.0, -20.0, 0.0); });
  CHECK(*std::min_element(far.begin(), far.end()) >= -20.0);
  CHECK(*std::max_element(far.begin(), far.end()) < -19.0);

  const GammaParams g(3.0, 1.0);
  const auto gb = sample(50000, [&] { return draw_gamma_below(rng, g, 0.5); });
  CHECK(*std::max_element(gb.begin(), gb.end()) < 0.5);
  // Far tail: rejection fails, inverse-cdf fallback must still land below.
  const GammaParams big(400.0, 1.0);
  const auto gt = sample(1000, [&] { return draw_gamma_below(rng, big, 300.0); });
  CHECK(*std::max_element(gt.begin(), gt.end()) < 300.0);
  CHECK(*std::min_element(gt.begin(), gt.end()) > 250.0);

  const InverseGammaParams ig(3.0, 2.0);
  const auto ia = sample(50000, [&] { return draw_inverse_gamma_above(rng, ig, 0.9); });
  CHECK(*std::min_element(ia.begin(), ia.end()) > 0.9);
  // Fraction below a point above the bound follows the truncated cdf.
  const double f = std::count_if(ia.begin(), ia.end(), [](double x) { return x < 1.2; }) / 50000.0;
  const double c09 = inverse_gamma_cdf(ig, 0.9);
  const double want = (inverse_gamma_cdf(ig, 1.2) - c09) / (1.0 - c09);
  CHECK(std::abs(f - want) < 0.01);

  const InverseGammaParams tight(200.0, 20.0);  // mass near 0.1
  const auto it = sample(1000, [&] { return draw_inverse_gamma_above(rng, tight, 0.2); });
  CHECK(*std::min_element(it.begin(), it.end()) > 0.2);
}
