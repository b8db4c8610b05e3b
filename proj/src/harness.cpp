#include "carinfo/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "carinfo/csv.hpp"
#include "carinfo/error.hpp"
#include "carinfo/report.hpp"
#include "chain_runner.hpp"
#include "icar.hpp"

namespace carinfo {
namespace {

using nlohmann::json;

std::vector<std::string> numbered_ids(std::size_t count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) ids.push_back(std::to_string(i));
  return ids;
}

std::uint64_t data_stream_for(std::size_t region_count, std::size_t replicate) {
  return RngStream::derive_stream_id(RngStream::derive_stream_id(0x51u, region_count), replicate);
}

// Re-raises a fitter error with context, keeping configuration errors distinguishable.
[[noreturn]] void rethrow_annotated(const std::string& context) {
  try {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError(context + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(context + ": " + e.what());
  } catch (const std::exception& e) {
    throw SamplerError(context + ": " + e.what());
  }
}

std::vector<double> a_hat_values(const ChainOutput& chain, int m0) {
  std::vector<double> out;
  for (const auto& e : effective_prior_events_draws(chain, m0)) out.push_back(e.a_hat);
  return out;
}

}  // namespace

void SimStudySpec::validate() const {
  if (!(a_true > 0.0) || !(lambda0_true > 0.0) || !(n_per_region > 0.0)) {
    throw ConfigError("simulation study parameters must be positive");
  }
  if (region_counts.empty() || region_counts.size() != replicates.size()) {
    throw ConfigError("region counts and replicate counts must be non-empty and of equal length");
  }
  for (std::size_t k = 0; k < region_counts.size(); ++k) {
    if (region_counts[k] < 1 || replicates[k] < 1) throw ConfigError("region and replicate counts must be >= 1");
  }
}

CountData simulate_counts(const SimStudySpec& spec, std::size_t region_count, std::size_t replicate) {
  spec.validate();
  if (region_count < 1) throw ConfigError("region count must be >= 1");
  RngStream rng(spec.root_seed, data_stream_for(region_count, replicate));
  const GammaParams rates(spec.a_true, spec.a_true / spec.lambda0_true);
  std::vector<std::int64_t> y(region_count);
  std::vector<double> n(region_count, spec.n_per_region);
  for (std::size_t i = 0; i < region_count; ++i) {
    const double lambda = draw_gamma(rng, rates);
    y[i] = draw_poisson(rng, spec.n_per_region * lambda);
  }
  return make_count_data(numbered_ids(region_count), std::move(y), std::move(n));
}

SimStudyReport run_sim_study(const SimStudySpec& spec, const McmcConfig& cfg) {
  spec.validate();
  cfg.validate();
  struct Task {
    std::size_t region_count;
    std::size_t replicate;
  };
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < spec.region_counts.size(); ++k) {
    for (std::size_t r = 0; r < spec.replicates[k]; ++r) tasks.push_back({spec.region_counts[k], r});
  }
  const std::size_t largest = *std::max_element(spec.region_counts.begin(), spec.region_counts.end());

  struct Outcome {
    SimStudyEntry entry;
    std::vector<double> gamma_draws;
    std::vector<double> lognormal_draws;
  };
  auto outcomes = detail::parallel_map(tasks.size(), [&](std::size_t t) {
    const Task task = tasks[t];
    try {
      Outcome o;
      o.entry.region_count = task.region_count;
      o.entry.replicate = task.replicate;
      o.entry.data_stream = data_stream_for(task.region_count, task.replicate);
      const CountData data = simulate_counts(spec, task.region_count, task.replicate);

      McmcConfig fit_cfg = cfg;
      fit_cfg.stream_id = RngStream::derive_stream_id(o.entry.data_stream, 1);
      const ChainOutput gamma_fit = fit_poisson_gamma_hier(data, fit_cfg);
      fit_cfg.stream_id = RngStream::derive_stream_id(o.entry.data_stream, 2);
      const ChainOutput lognormal_fit = fit_poisson_lognormal(data, fit_cfg);

      o.gamma_draws = a_hat_values(gamma_fit, 1);
      o.lognormal_draws = a_hat_values(lognormal_fit, 1);
      o.entry.gamma_informativeness = summarize(gamma_fit, "a_hat");
      o.entry.lognormal_informativeness = summarize(lognormal_fit, "a_hat");
      if (task.region_count != largest || task.replicate != 0) {
        o.gamma_draws.clear();
        o.lognormal_draws.clear();
      }
      return o;
    } catch (...) {
      rethrow_annotated("simulation study (I=" + std::to_string(task.region_count) +
                        ", replicate=" + std::to_string(task.replicate) + ")");
    }
  });

  SimStudyReport report{spec, cfg, {}, {}, {}};
  for (auto& o : outcomes) {
    report.entries.push_back(o.entry);
    if (!o.gamma_draws.empty()) {
      report.gamma_draws_largest = std::move(o.gamma_draws);
      report.lognormal_draws_largest = std::move(o.lognormal_draws);
    }
  }
  return report;
}

json to_json(const SimStudySpec& spec) {
  return {{"a_true", spec.a_true},
          {"lambda0_true", spec.lambda0_true},
          {"n_per_region", spec.n_per_region},
          {"region_counts", spec.region_counts},
          {"replicates", spec.replicates},
          {"root_seed", spec.root_seed}};
}

json SimStudyReport::to_json() const {
  json entries_json = json::array();
  for (const auto& e : entries) {
    entries_json.push_back({{"region_count", e.region_count},
                            {"replicate", e.replicate},
                            {"data_stream", e.data_stream},
                            {"gamma", carinfo::to_json(e.gamma_informativeness)},
                            {"lognormal", carinfo::to_json(e.lognormal_informativeness)}});
  }
  json largest = json::object();
  const std::size_t largest_count = *std::max_element(spec.region_counts.begin(), spec.region_counts.end());
  const auto first_largest = std::find_if(entries.begin(), entries.end(), [&](const SimStudyEntry& e) {
    return e.region_count == largest_count && e.replicate == 0;
  });
  if (first_largest != entries.end()) {
    const auto& g = first_largest->gamma_informativeness;
    const auto& l = first_largest->lognormal_informativeness;
    largest = {{"region_count", largest_count},
               {"gamma", carinfo::to_json(g)},
               {"lognormal", carinfo::to_json(l)},
               {"gamma_interval_covers_truth", g.q025 <= spec.a_true && spec.a_true <= g.q975},
               {"lognormal_median_below_gamma", l.q50 < g.q50}};
  }
  return {{"spec", carinfo::to_json(spec)},
          {"config", carinfo::to_json(config)},
          {"entries", entries_json},
          {"largest_comparison", largest},
          {"tool_version", kToolVersion}};
}

void SimStudyReport::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot open for writing");
  out << "region_count,replicate,model,mean,sd,q025,q50,q975,ess\n";
  for (const auto& e : entries) {
    for (const auto* s : {&e.gamma_informativeness, &e.lognormal_informativeness}) {
      out << e.region_count << ',' << e.replicate << ',' << (s == &e.gamma_informativeness ? "gamma" : "lognormal");
      for (double v : {s->mean, s->sd, s->q025, s->q50, s->q975, s->ess}) out << ',' << csv::format_double(v);
      out << '\n';
    }
  }
}

std::vector<QuantileRow> run_quantile_comparison(const QuantileComparisonSpec& spec, const McmcConfig& cfg) {
  cfg.validate();
  const GammaParams prior(spec.prior_events, spec.prior_events / spec.lambda0);
  const LognormalParams matched = gamma_to_lognormal(prior);
  std::optional<AdjacencyGraph> graph;
  if (spec.with_bym) graph = complete_graph(spec.bym_regions);

  auto per_count = detail::parallel_map(spec.counts.size(), [&](std::size_t k) {
    const std::int64_t y = spec.counts[k];
    const double n = static_cast<double>(y) / spec.lambda0;
    std::vector<QuantileRow> rows;

    const GammaParams exact = posterior_poisson_gamma(y, n, prior);
    rows.push_back({y, n, "gamma_exact", gamma_quantile(exact, 0.025), gamma_quantile(exact, 0.5),
                    gamma_quantile(exact, 0.975)});

    McmcConfig fit_cfg = cfg;
    fit_cfg.stream_id = RngStream::derive_stream_id(cfg.stream_id, 2 * k);
    LognormalPrior ln_prior;
    ln_prior.fixed_mu = matched.mu();
    ln_prior.fixed_precision = 1.0 / matched.sigma2();
    const auto ln_fit = fit_poisson_lognormal(make_count_data({"1"}, {y}, {n}), fit_cfg, ln_prior);
    const auto ln = summarize(ln_fit, region_column("lambda", "1"));
    rows.push_back({y, n, "lognormal_mcmc", ln.q025, ln.q50, ln.q975});

    if (graph) {
      fit_cfg.stream_id = RngStream::derive_stream_id(cfg.stream_id, 2 * k + 1);
      BymPrior bym_prior;
      bym_prior.fixed_sigma2 = spec.bym_sigma2;
      bym_prior.fixed_tau2 = spec.bym_tau2;
      const CountData data = make_count_data(graph->ids(), std::vector<std::int64_t>(spec.bym_regions, y),
                                             std::vector<double>(spec.bym_regions, n));
      const auto bym_fit = fit_bym(data, *graph, fit_cfg, std::nullopt, bym_prior);
      const auto b = summarize(bym_fit, region_column("lambda", graph->id(0)));
      rows.push_back({y, n, "bym_mcmc", b.q025, b.q50, b.q975});
    }
    return rows;
  });

  std::vector<QuantileRow> out;
  for (auto& rows : per_count) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

void write_quantile_csv(const std::vector<QuantileRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot open for writing");
  out << "y,n,method,q025,q50,q975\n";
  for (const auto& r : rows) {
    out << r.y << ',' << csv::format_double(r.n) << ',' << r.method << ',' << csv::format_double(r.q025) << ','
        << csv::format_double(r.q50) << ',' << csv::format_double(r.q975) << '\n';
  }
}

PairedReport run_restricted_pipeline(const CountData& data, const AdjacencyGraph& graph, const McmcConfig& cfg,
                                     double a_cap, int m0) {
  const Restriction restriction{a_cap, m0};
  restriction.validate();
  PairedReport report{fit_bym(data, graph, cfg, std::nullopt), fit_bym(data, graph, cfg, restriction), {}, restriction};

  const auto sigma2 = report.restricted.pooled_column("sigma2");
  const auto tau2 = report.restricted.pooled_column("tau2");
  for (std::size_t i = 0; i < sigma2.size(); ++i) {
    if (!restriction.admits(sigma2[i], tau2[i])) {
      throw SamplerError("restricted fit produced a draw with informativeness >= " + std::to_string(a_cap));
    }
  }
  report.comparison = compare_models({{"unrestricted", &report.unrestricted}, {"restricted", &report.restricted}}, m0);
  return report;
}

json PairedReport::to_json() const {
  auto info_summary = [&](const ChainOutput& chain) {
    return carinfo::to_json(summarize_values("a_hat", a_hat_values(chain, restriction.m0)));
  };
  return {{"restriction", {{"a_cap", restriction.a_cap}, {"m0", restriction.m0}}},
          {"config", carinfo::to_json(unrestricted.config)},
          {"unrestricted_informativeness", info_summary(unrestricted)},
          {"restricted_informativeness", info_summary(restricted)},
          {"islands", unrestricted.island_ids},
          {"comparison", carinfo::to_json(comparison)},
          {"tool_version", kToolVersion}};
}

std::vector<DatasetInformativeness> run_dataset_batch(const std::vector<NamedDataset>& sets, const McmcConfig& cfg,
                                                      int m0) {
  return detail::parallel_map(sets.size(), [&](std::size_t k) {
    const auto& set = sets[k];
    try {
      McmcConfig fit_cfg = cfg;
      fit_cfg.stream_id = RngStream::derive_stream_id(cfg.stream_id, k);
      const ChainOutput fit = fit_bym(set.data, set.graph, fit_cfg, std::nullopt);
      auto values = a_hat_values(fit, m0);
      std::sort(values.begin(), values.end());
      return DatasetInformativeness{set.name, set.data.size(),
                                    {set.name, ModelKind::Bym, m0, quantile_sorted(values, 0.5),
                                     quantile_sorted(values, 0.025), quantile_sorted(values, 0.975)}};
    } catch (...) {
      rethrow_annotated("data set '" + set.name + "'");
    }
  });
}

CountData simulate_bym_counts(const AdjacencyGraph& graph, const SyntheticBymSpec& spec) {
  if (!(spec.sigma2 > 0.0) || !(spec.tau2 > 0.0)) throw ConfigError("synthetic sigma2 and tau2 must be positive");
  if (!(spec.population_min > 0.0) || !(spec.population_max >= spec.population_min)) {
    throw ConfigError("synthetic population range is invalid");
  }
  RngStream rng(spec.seed, spec.stream_id);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.size()));
  for (const auto& basis : detail::laplacian_bases(graph)) {
    Eigen::VectorXd coef(basis.eigenvalues.size());
    for (Eigen::Index k = 0; k < coef.size(); ++k) {
      coef(k) = draw_normal(rng, 0.0, std::sqrt(spec.tau2 / basis.eigenvalues(k)));
    }
    const Eigen::VectorXd values = basis.vectors * coef;
    for (std::size_t a = 0; a < basis.members.size(); ++a) {
      z(static_cast<Eigen::Index>(basis.members[a])) = values(static_cast<Eigen::Index>(a));
    }
  }
  const double log_lo = std::log(spec.population_min);
  const double log_hi = std::log(spec.population_max);
  std::vector<std::int64_t> y(graph.size());
  std::vector<double> n(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    n[i] = std::round(log_hi > log_lo ? std::exp(draw_uniform(rng, log_lo, log_hi)) : spec.population_min);
    const double theta = spec.log_rate + z(static_cast<Eigen::Index>(i)) + draw_normal(rng, 0.0, std::sqrt(spec.sigma2));
    y[i] = draw_poisson(rng, n[i] * std::exp(theta));
  }
  return make_count_data(graph.ids(), std::move(y), std::move(n));
}

}  // namespace carinfo
