// Moment matching and the informativeness measure. Closed-form references were
// evaluated with mpmath at 40 digits.

#include <doctest.h>

#include <cmath>
#include <random>

#include "carinfo/approx.hpp"
#include "carinfo/error.hpp"

using namespace carinfo;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("gamma to lognormal closed form") {
  const auto ln = gamma_to_lognormal(GammaParams(8.75, 17500));
  CHECK(rel(ln.sigma2(), 0.10821358464023274) < 1e-14);
  CHECK(rel(ln.mu(), -7.655009251862198) < 1e-14);

  const auto unit = gamma_to_lognormal(GammaParams(1, 1));
  CHECK(unit.sigma2() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(unit.mu() == doctest::Approx(-std::log(2.0) / 2).epsilon(1e-15));

  const auto five = gamma_to_lognormal(GammaParams(5, 10000));
  CHECK(rel(five.mean(), 5e-4) < 1e-12);
  CHECK(rel(five.variance(), 5e-4 / 10000) < 1e-12);
}

TEST_CASE("lognormal to gamma closed form") {
  const auto g = lognormal_to_gamma(LognormalParams(-std::log(2.0) / 2, std::log(2.0)));
  CHECK(g.shape() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.rate() == doctest::Approx(1.0).epsilon(1e-14));

  const auto ten = lognormal_to_gamma(LognormalParams(-7.6, 1.0 / 10.0));
  CHECK(rel(ten.shape(), 9.5083319447750496) < 1e-14);

  const auto near = lognormal_to_gamma(LognormalParams(-7.654983, 0.1081623));
  CHECK(rel(near.shape(), 8.7543772973840208) < 1e-12);
  CHECK(rel(near.rate(), 17508.743922448552) < 1e-12);

  CHECK_THROWS_AS(lognormal_to_gamma(LognormalParams(0.0, 1e-15)), OverflowError);
  try {
    lognormal_to_gamma(LognormalParams(0.0, 1e-15));
  } catch (const OverflowError& e) {
    CHECK(std::string(e.what()).find("sigma2") != std::string::npos);
  }
}

TEST_CASE("moment identities and roundtrip over random gamma priors") {
  std::mt19937_64 gen(20190101);
  std::uniform_real_distribution<double> log_shape(std::log(0.05), std::log(500.0));
  std::uniform_real_distribution<double> log_rate(std::log(1e-2), std::log(1e7));
  double worst_moment = 0.0;
  double worst_roundtrip = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const GammaParams g(std::exp(log_shape(gen)), std::exp(log_rate(gen)));
    const auto ln = gamma_to_lognormal(g);
    worst_moment = std::max({worst_moment, rel(std::exp(ln.mu() + ln.sigma2() / 2), g.mean()),
                             rel(std::expm1(ln.sigma2()) * std::exp(2 * ln.mu() + ln.sigma2()), g.variance())});
    const auto back = lognormal_to_gamma(ln);
    worst_roundtrip = std::max({worst_roundtrip, rel(back.shape(), g.shape()), rel(back.rate(), g.rate())});
    const auto again = gamma_to_lognormal(back);
    worst_roundtrip = std::max({worst_roundtrip, rel(again.mu(), ln.mu()), rel(again.sigma2(), ln.sigma2())});
  }
  CHECK(worst_moment < 1e-12);
  CHECK(worst_roundtrip < 1e-10);
}

TEST_CASE("precision bound and informativeness anchors") {
  const InformativenessQuery dense(0.1, 0.3, 49);
  CHECK(rel(informativeness(dense).a_hat, 8.7542948672528355) < 1e-13);
  CHECK(informativeness(dense).m0 == 49);
  CHECK(rel(conditional_precision_bound(dense), 9.2452830188679241) < 1e-14);
  CHECK(rel(conditional_precision_bound(InformativenessQuery(0.1, 0.3, 3)), 4.2857142857142856) < 1e-14);
  CHECK(rel(conditional_precision_bound(InformativenessQuery(1, 1, 1)), 1.0 / 3.0) < 1e-15);
  CHECK(rel(informativeness(InformativenessQuery(0.05, 0.1, 3)).a_hat, 9.5083319447750496) < 1e-13);
  CHECK(rel(informativeness(InformativenessQuery(0.02, 0.3, 3)).a_hat, 7.4052895761049177) < 1e-13);
  CHECK(std::abs(informativeness(InformativenessQuery(std::log(2.0), 0.7, 1000000000)).a_hat - 1.0) < 1e-6);
  CHECK(InformativenessQuery(0.1, 0.3).m0() == kDefaultBaselineNeighbors);
}

TEST_CASE("informativeness is monotone on a grid") {
  const double grid[] = {0.005, 0.02, 0.1, 0.3, 1.0, 3.0};
  for (double s : grid) {
    for (double t : grid) {
      for (int m = 1; m < 12; ++m) {
        const double here = informativeness(InformativenessQuery(s, t, m)).a_hat;
        CHECK(informativeness(InformativenessQuery(s * 1.1, t, m)).a_hat < here);
        CHECK(informativeness(InformativenessQuery(s, t * 1.1, m)).a_hat < here);
        CHECK(informativeness(InformativenessQuery(s, t, m + 1)).a_hat > here);
        CHECK(conditional_precision_bound(InformativenessQuery(s, t, m + 1)) >
              conditional_precision_bound(InformativenessQuery(s, t, m)));
        CHECK(conditional_precision_bound(InformativenessQuery(s, t, m)) < 1.0 / s);
      }
    }
  }
}

TEST_CASE("query validation and overflow guard") {
  CHECK_THROWS_AS(InformativenessQuery(0.0, 0.3, 3), DomainError);
  CHECK_THROWS_AS(InformativenessQuery(0.1, -0.3, 3), DomainError);
  CHECK_THROWS_AS(InformativenessQuery(0.1, 0.3, 0), DomainError);
  CHECK_THROWS_AS(InformativenessQuery(NAN, 0.3, 3), DomainError);
  CHECK_THROWS_AS(informativeness(InformativenessQuery(1e-14, 1e-14, 1)), OverflowError);
  CHECK_NOTHROW(informativeness(InformativenessQuery(1e-6, 1e-6, 1)));
}

TEST_CASE("cap boundaries sit exactly on the level set") {
  const double cap = 6.0;
  const double s_min = min_sigma2_for_cap(0.3, 3, cap);
  CHECK(rel(s_min, 0.040613009870443731) < 1e-13);
  CHECK(informativeness(InformativenessQuery(s_min, 0.3, 3)).a_hat == doctest::Approx(cap).epsilon(1e-12));
  CHECK(informativeness(InformativenessQuery(s_min * 1.001, 0.3, 3)).a_hat < cap);
  const double t_min = min_tau2_for_cap(0.02, 3, cap);
  CHECK(rel(t_min, 0.38245203948177491) < 1e-13);
  CHECK(informativeness(InformativenessQuery(0.02, t_min, 3)).a_hat == doctest::Approx(cap).epsilon(1e-12));
  // Already admissible on the other axis: no lower bound.
  CHECK(min_sigma2_for_cap(5.0, 3, cap) == 0.0);
  CHECK(min_tau2_for_cap(5.0, 3, cap) == 0.0);
  CHECK_THROWS_AS(min_sigma2_for_cap(0.3, 3, 0.0), DomainError);
}
