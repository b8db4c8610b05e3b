#pragma once

// Model fitters for areal count data: conjugate Poisson-gamma (fixed and
// hierarchical), Poisson-lognormal, and the BYM convolution model with an
// optional cap on its informativeness.
//
// Every fitter processes regions in lexicographic order of their ids, so a
// permutation of the input rows permutes the per-region output and leaves
// everything else bit-identical.

#include <optional>
#include <vector>

#include "carinfo/approx.hpp"
#include "carinfo/data.hpp"
#include "carinfo/distributions.hpp"
#include "carinfo/graph.hpp"
#include "carinfo/mcmc.hpp"

namespace carinfo {

/// lambda_i ~ Gam(a, a / lambda0), a ~ U(0, shape_upper), lambda0 ~ U(0, mean_upper).
/// Either hyperparameter can be pinned.
struct PoissonGammaPrior {
  double shape_upper = 10.0;
  double mean_upper = 1e-3;
  std::optional<double> fixed_shape;
  std::optional<double> fixed_mean;
};

/// log lambda_i ~ N(mu, 1/gamma), mu ~ U(mu_lower, mu_upper), gamma ~ U(0, precision_upper).
struct LognormalPrior {
  double mu_lower = -20.0;
  double mu_upper = 0.0;
  double precision_upper = 10.0;
  std::optional<double> fixed_mu;
  std::optional<double> fixed_precision;
};

/// Flat prior on beta; sigma2 ~ IG(1, 1/100), tau2 ~ IG(1, 1/7) unless pinned.
struct BymPrior {
  InverseGammaParams sigma2{1.0, 1.0 / 100.0};
  InverseGammaParams tau2{1.0, 1.0 / 7.0};
  std::optional<double> fixed_sigma2;
  std::optional<double> fixed_tau2;
};

/// Keeps the model's effective prior events for a region with m0 neighbours
/// strictly below a_cap.
struct Restriction {
  double a_cap;
  int m0 = kDefaultBaselineNeighbors;

  void validate() const;
  bool admits(double sigma2, double tau2) const;
};

/// Gam(a + y, b + n): the conjugate update of a gamma prior by a Poisson count.
GammaParams posterior_poisson_gamma(std::int64_t y, double n, const GammaParams& prior);

/// Collapsed sampler: reflecting random-walk Metropolis on (a, lambda0) against
/// the negative-binomial marginal likelihood, then an exact Gibbs draw of each
/// lambda_i. Columns: a, lambda0, b, a_hat (= a), lambda[id]...
ChainOutput fit_poisson_gamma_hier(const CountData& data, const McmcConfig& cfg, const PoissonGammaPrior& prior = {});

/// Adaptive random-walk Metropolis on theta_i = log lambda_i; truncated Gibbs
/// draws of mu and gamma. Columns: mu, gamma, sigma2 (= 1/gamma), a_hat
/// (= 1/(exp(1/gamma) - 1)), lambda[id]...
ChainOutput fit_poisson_lognormal(const CountData& data, const McmcConfig& cfg, const LognormalPrior& prior = {});

/// theta_i | beta, z, sigma2 ~ N(x_i' beta + z_i, sigma2), z ~ ICAR(tau2).
///
/// Per sweep: adaptive Metropolis on each theta_i; block Gibbs draw of z for
/// each connected component from its Gaussian full conditional on the
/// sum-to-zero subspace (islands keep z_i = 0); Gibbs draws of beta, sigma2 and
/// tau2. With a restriction, sigma2 and then tau2 come from their full
/// conditionals truncated to the admissible region. Columns: beta[name]...,
/// sigma2, tau2, a_hat (m0 from the restriction, else 3), lambda[id]..., z[id]...
ChainOutput fit_bym(const CountData& data, const AdjacencyGraph& graph, const McmcConfig& cfg,
                    const std::optional<Restriction>& restriction = std::nullopt, const BymPrior& prior = {});

/// Model-appropriate effective prior events per retained draw (chains pooled):
/// BYM uses sigma2, tau2 and m0; lognormal uses 1/(exp(1/gamma) - 1); gamma
/// passes a through. Throws ContractError if the needed columns are missing.
std::vector<EffectivePriorEvents> effective_prior_events_draws(const ChainOutput& chain,
                                                               int m0 = kDefaultBaselineNeighbors);

}  // namespace carinfo
