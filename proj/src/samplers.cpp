#include "carinfo/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>

#include "carinfo/error.hpp"
#include "chain_runner.hpp"
#include "icar.hpp"

namespace carinfo {
namespace {

using detail::AdaptiveScale;

// Rows sorted by region id; `input_of[k]` is the input row of internal row k.
struct CanonicalData {
  CountData data;
  std::vector<std::size_t> input_of;
  std::vector<std::size_t> internal_of;  // inverse of input_of
};

CanonicalData canonicalize(const CountData& input) {
  input.validate();
  CanonicalData out;
  out.input_of.resize(input.size());
  std::iota(out.input_of.begin(), out.input_of.end(), std::size_t{0});
  std::sort(out.input_of.begin(), out.input_of.end(),
            [&](std::size_t a, std::size_t b) { return input.region_ids[a] < input.region_ids[b]; });
  out.internal_of.resize(input.size());
  for (std::size_t k = 0; k < out.input_of.size(); ++k) out.internal_of[out.input_of[k]] = k;
  out.data = input.subset(out.input_of);
  return out;
}

std::vector<std::string> region_columns(const std::string& param, const CountData& input) {
  std::vector<std::string> cols;
  cols.reserve(input.size());
  for (const auto& id : input.region_ids) cols.push_back(region_column(param, id));
  return cols;
}

// Folds x back into [lo, hi] by reflection at the bounds.
double reflect(double x, double lo, double hi) {
  const double width = hi - lo;
  if (!(width > 0.0)) return lo;
  double shifted = std::fmod(x - lo, 2.0 * width);
  if (shifted < 0.0) shifted += 2.0 * width;
  return shifted <= width ? lo + shifted : hi - (shifted - width);
}

bool accept(RngStream& rng, double log_ratio) {
  if (log_ratio >= 0.0) return true;
  return std::log(rng.uniform_open()) < log_ratio;
}

void require_in_support(const std::optional<double>& fixed, double lo, double hi, const char* name) {
  if (fixed && !(*fixed > lo && *fixed < hi)) {
    throw ConfigError(std::string("fixed ") + name + " lies outside its prior support");
  }
}

// Theta update shared by the lognormal and BYM models:
// log target = y theta - n exp(theta) - (theta - centre)^2 / (2 var).
bool update_log_rate(RngStream& rng, double& theta, std::int64_t y, double n, double centre, double var,
                     AdaptiveScale& step, bool adapting, const AdaptationSettings& settings) {
  const double proposal = theta + step.scale() * draw_normal(rng, 0.0, 1.0);
  const double yd = static_cast<double>(y);
  const double d_new = proposal - centre;
  const double d_old = theta - centre;
  const double log_ratio = yd * (proposal - theta) - n * (std::exp(proposal) - std::exp(theta)) -
                           (d_new * d_new - d_old * d_old) / (2.0 * var);
  const bool ok = std::isfinite(log_ratio) && accept(rng, log_ratio);
  if (ok) theta = proposal;
  step.record(ok, adapting, settings);
  return ok;
}

double initial_log_rate(std::int64_t y, double n) { return std::log((static_cast<double>(y) + 0.5) / n); }

// --- Poisson-gamma -----------------------------------------------------------------

class PoissonGammaChain {
 public:
  PoissonGammaChain(const CanonicalData& cd, const PoissonGammaPrior& prior, const AdaptationSettings& settings,
                    std::size_t chain_index)
      : cd_(cd), prior_(prior), settings_(settings), lambda_(cd.data.size()) {
    const double spread = 1.0 + 0.25 * static_cast<double>(chain_index % 4);
    shape_ = prior.fixed_shape.value_or(std::min(0.2 * spread * prior.shape_upper, 0.9 * prior.shape_upper));
    double ysum = 0.0;
    double nsum = 0.0;
    for (std::size_t i = 0; i < cd.data.size(); ++i) {
      ysum += static_cast<double>(cd.data.y[i]);
      nsum += cd.data.n[i];
    }
    const double crude = std::clamp((ysum + 0.5) / nsum, 0.01 * prior.mean_upper, 0.9 * prior.mean_upper);
    mean_ = prior.fixed_mean.value_or(crude);
    shape_step_ = AdaptiveScale(0.1 * prior.shape_upper);
    mean_step_ = AdaptiveScale(0.1 * mean_);
    log_marginal_ = log_marginal(shape_, mean_);
  }

  void sweep(RngStream& rng, bool adapting) {
    if (!prior_.fixed_shape) {
      const double proposal = reflect(shape_ + shape_step_.scale() * draw_normal(rng, 0.0, 1.0), 0.0,
                                      prior_.shape_upper);
      propose(rng, proposal, mean_, shape_step_, adapting);
    }
    if (!prior_.fixed_mean) {
      const double proposal = reflect(mean_ + mean_step_.scale() * draw_normal(rng, 0.0, 1.0), 0.0,
                                      prior_.mean_upper);
      propose(rng, shape_, proposal, mean_step_, adapting);
    }
    const double rate = shape_ / mean_;
    for (std::size_t i = 0; i < lambda_.size(); ++i) {
      lambda_[i] = draw_gamma(rng, posterior_poisson_gamma(cd_.data.y[i], cd_.data.n[i], GammaParams(shape_, rate)));
    }
  }

  void write(std::span<double> row) const {
    row[0] = shape_;
    row[1] = mean_;
    row[2] = shape_ / mean_;
    row[3] = shape_;
    for (std::size_t r = 0; r < lambda_.size(); ++r) row[4 + r] = lambda_[cd_.internal_of[r]];
  }

  std::vector<std::pair<std::string, double>> acceptance() const {
    std::vector<std::pair<std::string, double>> out;
    if (!prior_.fixed_shape) out.emplace_back("a", shape_step_.acceptance_rate());
    if (!prior_.fixed_mean) out.emplace_back("lambda0", mean_step_.acceptance_rate());
    return out;
  }

 private:
  // log p(y | a, lambda0) up to a constant: negative-binomial marginal of each y_i.
  double log_marginal(double shape, double mean) const {
    const double rate = shape / mean;
    const double lg_shape = log_gamma_fn(shape);
    const double log_rate = std::log(rate);
    double total = 0.0;
    for (std::size_t i = 0; i < cd_.data.size(); ++i) {
      const double y = static_cast<double>(cd_.data.y[i]);
      total += log_gamma_fn(y + shape) - lg_shape + shape * log_rate - (y + shape) * std::log(rate + cd_.data.n[i]);
    }
    return total;
  }

  void propose(RngStream& rng, double shape, double mean, AdaptiveScale& step, bool adapting) {
    bool ok = false;
    if (shape > 0.0 && mean > 0.0) {
      const double candidate = log_marginal(shape, mean);
      ok = std::isfinite(candidate) && accept(rng, candidate - log_marginal_);
      if (ok) {
        shape_ = shape;
        mean_ = mean;
        log_marginal_ = candidate;
      }
    }
    step.record(ok, adapting, settings_);
  }

  const CanonicalData& cd_;
  const PoissonGammaPrior& prior_;
  const AdaptationSettings& settings_;
  double shape_;
  double mean_;
  double log_marginal_;
  AdaptiveScale shape_step_;
  AdaptiveScale mean_step_;
  std::vector<double> lambda_;
};

// --- Poisson-lognormal -------------------------------------------------------------

class LognormalChain {
 public:
  LognormalChain(const CanonicalData& cd, const LognormalPrior& prior, const AdaptationSettings& settings,
                 RngStream& rng)
      : cd_(cd), prior_(prior), settings_(settings) {
    const std::size_t count = cd.data.size();
    theta_.resize(count);
    steps_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      theta_[i] = initial_log_rate(cd.data.y[i], cd.data.n[i]) + draw_normal(rng, 0.0, 0.1);
      steps_.emplace_back(1.0 / std::sqrt(static_cast<double>(cd.data.y[i]) + 1.0));
    }
    const double avg = std::accumulate(theta_.begin(), theta_.end(), 0.0) / static_cast<double>(count);
    const double width = prior.mu_upper - prior.mu_lower;
    mu_ = prior.fixed_mu.value_or(std::clamp(avg, prior.mu_lower + 1e-3 * width, prior.mu_upper - 1e-3 * width));
    precision_ = prior.fixed_precision.value_or(0.5 * prior.precision_upper);
  }

  void sweep(RngStream& rng, bool adapting) {
    const std::size_t count = theta_.size();
    const double var = 1.0 / precision_;
    for (std::size_t i = 0; i < count; ++i) {
      update_log_rate(rng, theta_[i], cd_.data.y[i], cd_.data.n[i], mu_, var, steps_[i], adapting, settings_);
    }
    const double dn = static_cast<double>(count);
    if (!prior_.fixed_mu) {
      const double avg = std::accumulate(theta_.begin(), theta_.end(), 0.0) / dn;
      mu_ = draw_truncated_normal(rng, avg, 1.0 / std::sqrt(dn * precision_), prior_.mu_lower, prior_.mu_upper);
    }
    if (!prior_.fixed_precision) {
      double ss = 0.0;
      for (double t : theta_) ss += (t - mu_) * (t - mu_);
      ss = std::max(ss, 1e-300);
      precision_ = draw_gamma_below(rng, GammaParams(0.5 * dn + 1.0, 0.5 * ss), prior_.precision_upper);
    }
  }

  void write(std::span<double> row) const {
    row[0] = mu_;
    row[1] = precision_;
    row[2] = 1.0 / precision_;
    row[3] = matched_gamma_shape(1.0 / precision_);
    for (std::size_t r = 0; r < theta_.size(); ++r) row[4 + r] = std::exp(theta_[cd_.internal_of[r]]);
  }

  std::vector<std::pair<std::string, double>> acceptance() const {
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t k = 0; k < steps_.size(); ++k) {
      out.emplace_back(region_column("theta", cd_.data.region_ids[k]), steps_[k].acceptance_rate());
    }
    return out;
  }

 private:
  const CanonicalData& cd_;
  const LognormalPrior& prior_;
  const AdaptationSettings& settings_;
  std::vector<double> theta_;
  std::vector<AdaptiveScale> steps_;
  double mu_;
  double precision_;
};

// --- BYM -----------------------------------------------------------------------------

struct BymModel {
  CanonicalData cd;
  AdjacencyGraph graph;
  Eigen::MatrixXd x;
  Eigen::LLT<Eigen::MatrixXd> xtx;
  std::vector<detail::ComponentBasis> bases;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  double icar_rank = 0.0;
  std::vector<std::string> beta_names;
};

BymModel build_bym_model(const CountData& data, const AdjacencyGraph& graph) {
  BymModel model{canonicalize(data), graph, {}, {}, {}, {}, 0.0, {}};
  const auto& ids = model.cd.data.region_ids;
  if (graph.size() != ids.size()) {
    throw ValidationError("adjacency graph has " + std::to_string(graph.size()) + " regions but the counts have " +
                          std::to_string(ids.size()));
  }
  std::string missing;
  for (const auto& id : ids) {
    if (!graph.index_of(id)) missing += (missing.empty() ? "" : ", ") + id;
  }
  if (!missing.empty()) throw ValidationError("regions missing from the adjacency graph: " + missing);
  model.graph = graph.reordered(ids);

  model.x = model.cd.data.design_matrix();
  const Eigen::MatrixXd gram = model.x.transpose() * model.x;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (lu.rank() < gram.rows()) throw ValidationError("design matrix is not of full column rank");
  model.xtx.compute(gram);
  model.beta_names.push_back("beta[intercept]");
  for (const auto& name : model.cd.data.covariate_names) model.beta_names.push_back("beta[" + name + "]");

  model.bases = detail::laplacian_bases(model.graph);
  model.edges = model.graph.edges();
  model.icar_rank = static_cast<double>(model.graph.icar_rank());
  return model;
}

class BymChain {
 public:
  BymChain(const BymModel& model, const BymPrior& prior, const std::optional<Restriction>& restriction,
           const AdaptationSettings& settings, RngStream& rng)
      : m_(model), prior_(prior), restriction_(restriction), settings_(settings) {
    const auto& d = model.cd.data;
    const auto count = static_cast<Eigen::Index>(d.size());
    theta_.resize(count);
    z_ = Eigen::VectorXd::Zero(count);
    for (Eigen::Index i = 0; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      theta_(i) = initial_log_rate(d.y[k], d.n[k]) + draw_normal(rng, 0.0, 0.1);
      steps_.emplace_back(0.8 / std::sqrt(static_cast<double>(d.y[k]) + 1.0));
    }
    beta_ = model.xtx.solve(model.x.transpose() * theta_);
    sigma2_ = prior.fixed_sigma2.value_or(0.05);
    tau2_ = prior.fixed_tau2.value_or(0.2);
    if (restriction && !restriction->admits(sigma2_, tau2_)) {
      if (!prior.fixed_sigma2) {
        sigma2_ = 1.5 * min_sigma2_for_cap(tau2_, restriction->m0, restriction->a_cap) + 1e-9;
      } else if (!prior.fixed_tau2) {
        tau2_ = 1.5 * min_tau2_for_cap(sigma2_, restriction->m0, restriction->a_cap) + 1e-9;
      } else {
        throw ConfigError("fixed sigma2 and tau2 violate the informativeness restriction");
      }
    }
    report_m0_ = restriction ? restriction->m0 : kDefaultBaselineNeighbors;
  }

  void sweep(RngStream& rng, bool adapting) {
    const auto& d = m_.cd.data;
    const Eigen::VectorXd fixed_part = m_.x * beta_;

    for (Eigen::Index i = 0; i < theta_.size(); ++i) {
      const auto k = static_cast<std::size_t>(i);
      update_log_rate(rng, theta_(i), d.y[k], d.n[k], fixed_part(i) + z_(i), sigma2_, steps_[k], adapting,
                      settings_);
    }

    update_spatial(rng, fixed_part);

    const Eigen::VectorXd resid = theta_ - z_;
    const Eigen::VectorXd beta_mean = m_.xtx.solve(m_.x.transpose() * resid);
    Eigen::VectorXd noise(beta_.size());
    for (Eigen::Index j = 0; j < noise.size(); ++j) noise(j) = draw_normal(rng, 0.0, 1.0);
    // Cov = sigma2 (X'X)^-1 = sigma2 L^-T L^-1.
    beta_ = beta_mean + std::sqrt(sigma2_) * m_.xtx.matrixU().solve(noise);

    const double dn = static_cast<double>(theta_.size());
    if (!prior_.fixed_sigma2) {
      const double ss = (theta_ - m_.x * beta_ - z_).squaredNorm();
      const InverseGammaParams full(prior_.sigma2.shape() + 0.5 * dn, prior_.sigma2.scale() + 0.5 * ss);
      const double lower = restriction_ ? min_sigma2_for_cap(tau2_, restriction_->m0, restriction_->a_cap) : 0.0;
      sigma2_ = draw_variance(rng, full, lower, Variance::Sigma2);
    }
    if (!prior_.fixed_tau2) {
      double ss = 0.0;
      for (const auto& [i, j] : m_.edges) {
        const double diff = z_(static_cast<Eigen::Index>(i)) - z_(static_cast<Eigen::Index>(j));
        ss += diff * diff;
      }
      const InverseGammaParams full(prior_.tau2.shape() + 0.5 * m_.icar_rank, prior_.tau2.scale() + 0.5 * ss);
      const double lower = restriction_ ? min_tau2_for_cap(sigma2_, restriction_->m0, restriction_->a_cap) : 0.0;
      tau2_ = draw_variance(rng, full, lower, Variance::Tau2);
    }
  }

  void write(std::span<double> row) const {
    std::size_t c = 0;
    for (Eigen::Index j = 0; j < beta_.size(); ++j) row[c++] = beta_(j);
    row[c++] = sigma2_;
    row[c++] = tau2_;
    row[c++] = informativeness(InformativenessQuery(sigma2_, tau2_, report_m0_)).a_hat;
    const std::size_t count = m_.cd.input_of.size();
    for (std::size_t r = 0; r < count; ++r) {
      row[c++] = std::exp(theta_(static_cast<Eigen::Index>(m_.cd.internal_of[r])));
    }
    for (std::size_t r = 0; r < count; ++r) row[c++] = z_(static_cast<Eigen::Index>(m_.cd.internal_of[r]));
  }

  std::vector<std::pair<std::string, double>> acceptance() const {
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t k = 0; k < steps_.size(); ++k) {
      out.emplace_back(region_column("theta", m_.cd.data.region_ids[k]), steps_[k].acceptance_rate());
    }
    return out;
  }

 private:
  // z restricted to sum zero within each component has precision
  // L / tau2 + I / sigma2 on that subspace, diagonal in the Laplacian eigenbasis.
  void update_spatial(RngStream& rng, const Eigen::VectorXd& fixed_part) {
    for (const auto& basis : m_.bases) {
      const auto n = static_cast<Eigen::Index>(basis.members.size());
      Eigen::VectorXd resid(n);
      for (Eigen::Index a = 0; a < n; ++a) {
        const auto i = static_cast<Eigen::Index>(basis.members[static_cast<std::size_t>(a)]);
        resid(a) = theta_(i) - fixed_part(i);
      }
      const Eigen::VectorXd projected = basis.vectors.transpose() * resid;
      Eigen::VectorXd coef(n - 1);
      for (Eigen::Index k = 0; k < n - 1; ++k) {
        const double precision = basis.eigenvalues(k) / tau2_ + 1.0 / sigma2_;
        coef(k) = projected(k) / (sigma2_ * precision) + draw_normal(rng, 0.0, 1.0) / std::sqrt(precision);
      }
      Eigen::VectorXd values = basis.vectors * coef;
      values.array() -= values.mean();
      for (Eigen::Index a = 0; a < n; ++a) z_(static_cast<Eigen::Index>(basis.members[static_cast<std::size_t>(a)])) = values(a);
    }
  }

  enum class Variance { Sigma2, Tau2 };

  // Full-conditional draw, truncated to (lower, inf) under a restriction. The
  // admissibility re-check guards against rounding exactly at the boundary.
  double draw_variance(RngStream& rng, const InverseGammaParams& full, double lower, Variance which) {
    if (!restriction_) return draw_inverse_gamma(rng, full);
    const bool is_sigma2 = which == Variance::Sigma2;
    for (int attempt = 0; attempt < 100; ++attempt) {
      const double value = draw_inverse_gamma_above(rng, full, lower);
      if (restriction_->admits(is_sigma2 ? value : sigma2_, is_sigma2 ? tau2_ : value)) return value;
    }
    throw SamplerError(std::string("restricted ") + (is_sigma2 ? "sigma2" : "tau2") + " draw failed: no admissible value above boundary " +
                       std::to_string(lower) + " (cap a_hat < " + std::to_string(restriction_->a_cap) + ", m0=" +
                       std::to_string(restriction_->m0) + ")");
  }

  const BymModel& m_;
  const BymPrior& prior_;
  const std::optional<Restriction>& restriction_;
  const AdaptationSettings& settings_;
  Eigen::VectorXd theta_;
  Eigen::VectorXd z_;
  Eigen::VectorXd beta_;
  double sigma2_;
  double tau2_;
  int report_m0_;
  std::vector<AdaptiveScale> steps_;
};

}  // namespace

void Restriction::validate() const {
  if (!(std::isfinite(a_cap) && a_cap > 0.0)) throw ConfigError("restriction cap must be positive and finite");
  if (m0 < 1) throw ConfigError("restriction m0 must be >= 1");
}

bool Restriction::admits(double sigma2, double tau2) const {
  const InformativenessQuery q(sigma2, tau2, m0);
  if (q.conditional_variance() < 1e-12) return false;
  return informativeness(q).a_hat < a_cap;
}

GammaParams posterior_poisson_gamma(std::int64_t y, double n, const GammaParams& prior) {
  if (y < 0) throw DomainError("posterior_poisson_gamma: y must be >= 0");
  if (!(std::isfinite(n) && n > 0.0)) throw DomainError("posterior_poisson_gamma: n must be positive");
  return {prior.shape() + static_cast<double>(y), prior.rate() + n};
}

ChainOutput fit_poisson_gamma_hier(const CountData& data, const McmcConfig& cfg, const PoissonGammaPrior& prior) {
  if (!(prior.shape_upper > 0.0) || !(prior.mean_upper > 0.0)) throw ConfigError("prior upper bounds must be positive");
  require_in_support(prior.fixed_shape, 0.0, prior.shape_upper, "a");
  require_in_support(prior.fixed_mean, 0.0, prior.mean_upper, "lambda0");
  const CanonicalData cd = canonicalize(data);

  ChainOutput out;
  out.model = ModelKind::PoissonGamma;
  out.region_ids = data.region_ids;
  out.config = cfg;
  out.columns = {"a", "lambda0", "b", "a_hat"};
  auto lambda_cols = region_columns("lambda", data);
  out.columns.insert(out.columns.end(), lambda_cols.begin(), lambda_cols.end());

  out.chains = detail::run_chains(cfg, out.columns.size(), [&](RngStream&, std::size_t c) {
    return PoissonGammaChain(cd, prior, cfg.adaptation, c);
  });
  return out;
}

ChainOutput fit_poisson_lognormal(const CountData& data, const McmcConfig& cfg, const LognormalPrior& prior) {
  if (!(prior.mu_lower < prior.mu_upper) || !(prior.precision_upper > 0.0)) {
    throw ConfigError("lognormal prior bounds are empty");
  }
  require_in_support(prior.fixed_mu, prior.mu_lower, prior.mu_upper, "mu");
  require_in_support(prior.fixed_precision, 0.0, prior.precision_upper, "gamma");
  const CanonicalData cd = canonicalize(data);

  ChainOutput out;
  out.model = ModelKind::PoissonLognormal;
  out.region_ids = data.region_ids;
  out.config = cfg;
  out.columns = {"mu", "gamma", "sigma2", "a_hat"};
  auto lambda_cols = region_columns("lambda", data);
  out.columns.insert(out.columns.end(), lambda_cols.begin(), lambda_cols.end());

  out.chains = detail::run_chains(cfg, out.columns.size(), [&](RngStream& rng, std::size_t) {
    return LognormalChain(cd, prior, cfg.adaptation, rng);
  });
  return out;
}

ChainOutput fit_bym(const CountData& data, const AdjacencyGraph& graph, const McmcConfig& cfg,
                    const std::optional<Restriction>& restriction, const BymPrior& prior) {
  if (restriction) restriction->validate();
  if (prior.fixed_sigma2 && !(*prior.fixed_sigma2 > 0.0)) throw ConfigError("fixed sigma2 must be positive");
  if (prior.fixed_tau2 && !(*prior.fixed_tau2 > 0.0)) throw ConfigError("fixed tau2 must be positive");
  const BymModel model = build_bym_model(data, graph);

  ChainOutput out;
  out.model = ModelKind::Bym;
  out.region_ids = data.region_ids;
  out.config = cfg;
  out.informativeness_m0 = restriction ? restriction->m0 : kDefaultBaselineNeighbors;
  if (restriction) out.restriction_cap = restriction->a_cap;
  for (const auto& id : data.region_ids) {
    if (graph.is_island(*graph.index_of(id))) out.island_ids.push_back(id);
  }
  out.columns = model.beta_names;
  out.columns.insert(out.columns.end(), {"sigma2", "tau2", "a_hat"});
  for (const char* param : {"lambda", "z"}) {
    auto cols = region_columns(param, data);
    out.columns.insert(out.columns.end(), cols.begin(), cols.end());
  }

  out.chains = detail::run_chains(cfg, out.columns.size(), [&](RngStream& rng, std::size_t) {
    return BymChain(model, prior, restriction, cfg.adaptation, rng);
  });
  return out;
}

std::vector<EffectivePriorEvents> effective_prior_events_draws(const ChainOutput& chain, int m0) {
  std::vector<EffectivePriorEvents> out;
  switch (chain.model) {
    case ModelKind::Bym: {
      if (m0 < 1) throw DomainError("m0 must be >= 1");
      const auto sigma2 = chain.pooled_column("sigma2");
      const auto tau2 = chain.pooled_column("tau2");
      out.reserve(sigma2.size());
      for (std::size_t i = 0; i < sigma2.size(); ++i) {
        out.push_back(informativeness(InformativenessQuery(sigma2[i], tau2[i], m0)));
      }
      break;
    }
    case ModelKind::PoissonLognormal: {
      for (double g : chain.pooled_column("gamma")) out.push_back({matched_gamma_shape(1.0 / g), m0});
      break;
    }
    case ModelKind::PoissonGamma: {
      for (double a : chain.pooled_column("a")) out.push_back({a, m0});
      break;
    }
  }
  return out;
}

}  // namespace carinfo
