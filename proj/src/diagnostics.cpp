#include "carinfo/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "carinfo/error.hpp"
#include "carinfo/samplers.hpp"

namespace carinfo {
namespace {

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, 0.5);
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw ContractError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile probability outside [0, 1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double effective_sample_size(std::span<const double> draws) {
  const std::size_t n = draws.size();
  if (n == 0) throw ContractError("effective sample size of an empty chain");
  if (n < 4) return static_cast<double>(n);
  const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / static_cast<double>(n);
  auto autocov = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) s += (draws[t] - mean) * (draws[t + lag] - mean);
    return s / static_cast<double>(n);
  };
  const double c0 = autocov(0);
  if (!(c0 > 0.0)) return static_cast<double>(n);

  // Pair sums are truncated at the first non-positive one and forced
  // non-increasing (Geyer's initial monotone refinement).
  double tau = -1.0;
  double previous = INFINITY;
  for (std::size_t lag = 0; lag + 1 < n; lag += 2) {
    double pair = (autocov(lag) + autocov(lag + 1)) / c0;
    if (!(pair > 0.0)) break;
    pair = std::min(pair, previous);
    previous = pair;
    tau += 2.0 * pair;
  }
  const double ess = static_cast<double>(n) / std::max(tau, 1e-12);
  return std::clamp(ess, 1e-12, static_cast<double>(n));
}

PosteriorSummary summarize_values(const std::string& parameter, std::span<const double> values) {
  if (values.empty()) throw ContractError("no draws to summarize for '" + parameter + "'");
  PosteriorSummary s;
  s.parameter = parameter;
  s.draws = values.size();
  s.chains = 1;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.q025 = quantile_sorted(sorted, 0.025);
  s.q25 = quantile_sorted(sorted, 0.25);
  s.q50 = quantile_sorted(sorted, 0.5);
  s.q75 = quantile_sorted(sorted, 0.75);
  s.q975 = quantile_sorted(sorted, 0.975);
  s.ess = effective_sample_size(values);
  return s;
}

PosteriorSummary summarize(const ChainOutput& chain, const std::string& parameter) {
  if (chain.total_draws() == 0) throw ContractError("chain output holds no draws");
  const auto pooled = chain.pooled_column(parameter);
  PosteriorSummary s = summarize_values(parameter, pooled);
  s.chains = chain.chains.size();
  s.ess = 0.0;
  for (std::size_t c = 0; c < chain.chains.size(); ++c) {
    s.ess += effective_sample_size(chain.chain_column(c, parameter));
  }
  return s;
}

ComparisonTable compare_models(const std::vector<LabelledChain>& chains, int m0) {
  if (chains.empty()) throw ContractError("compare_models needs at least one chain");
  ComparisonTable table;
  table.region_ids = chains.front().chain->region_ids;
  const std::set<std::string> reference(table.region_ids.begin(), table.region_ids.end());

  for (const auto& [label, chain] : chains) {
    const std::set<std::string> ids(chain->region_ids.begin(), chain->region_ids.end());
    if (ids != reference) throw ContractError("model '" + label + "' was fitted to a different set of regions");

    const int used_m0 = chain->model == ModelKind::Bym ? m0 : 0;
    std::vector<double> info;
    for (const auto& e : effective_prior_events_draws(*chain, chain->model == ModelKind::Bym ? m0 : 1)) {
      info.push_back(e.a_hat);
    }
    std::sort(info.begin(), info.end());
    table.models.push_back({label, chain->model, used_m0, quantile_sorted(info, 0.5), quantile_sorted(info, 0.025),
                            quantile_sorted(info, 0.975)});

    std::vector<double> medians;
    medians.reserve(table.region_ids.size());
    for (const auto& id : table.region_ids) medians.push_back(median_of(chain->pooled_column(region_column("lambda", id))));
    table.rate_medians.push_back(std::move(medians));
  }

  if (table.rate_medians.size() >= 2) {
    const auto& u = table.rate_medians[0];
    const auto& r = table.rate_medians[1];
    for (std::size_t i = 0; i < u.size(); ++i) table.percent_change.push_back(200.0 * (u[i] - r[i]) / (u[i] + r[i]));
  }
  return table;
}

}  // namespace carinfo
