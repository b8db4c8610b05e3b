#pragma once

// Reproducible experiment drivers: the gamma-vs-lognormal simulation study,
// the quantile comparison between exact and approximate posteriors, and the
// unrestricted-vs-restricted BYM pipeline.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "carinfo/diagnostics.hpp"
#include "carinfo/graph.hpp"
#include "carinfo/samplers.hpp"

namespace carinfo {

/// Data-generating setup: lambda_i ~ Gam(a, a / lambda0), y_i ~ Pois(n lambda_i).
struct SimStudySpec {
  double a_true = 5.0;
  double lambda0_true = 5e-4;
  double n_per_region = 20000.0;
  std::vector<std::size_t> region_counts{10, 25, 50, 100, 200};
  /// Replicates per entry of region_counts; defaults follow 20/8/4/2/1.
  std::vector<std::size_t> replicates{20, 8, 4, 2, 1};
  std::uint64_t root_seed = 1;

  void validate() const;
};

/// Deterministic in (root_seed, region_count, replicate). Region ids "1".."I".
CountData simulate_counts(const SimStudySpec& spec, std::size_t region_count, std::size_t replicate);

struct SimStudyEntry {
  std::size_t region_count = 0;
  std::size_t replicate = 0;
  std::uint64_t data_stream = 0;
  PosteriorSummary gamma_informativeness;      // posterior of a
  PosteriorSummary lognormal_informativeness;  // posterior of 1/(exp(1/gamma) - 1)
};

struct SimStudyReport {
  SimStudySpec spec;
  McmcConfig config;
  std::vector<SimStudyEntry> entries;
  /// Pooled informativeness draws for the first replicate at the largest I.
  std::vector<double> gamma_draws_largest;
  std::vector<double> lognormal_draws_largest;

  nlohmann::json to_json() const;
  /// One row per (I, replicate, model) with the informativeness summary.
  void write_csv(const std::string& path) const;
};

/// Fits the hierarchical gamma and lognormal models to every simulated data
/// set; replicates run concurrently. Fitter errors are re-raised with the
/// (I, replicate) they came from.
SimStudyReport run_sim_study(const SimStudySpec& spec, const McmcConfig& cfg);

/// One row of the exact-vs-approximate posterior quantile comparison.
struct QuantileRow {
  std::int64_t y = 0;
  double n = 0.0;
  std::string method;
  double q025 = 0.0;
  double q50 = 0.0;
  double q975 = 0.0;
};

/// For each y: the exact Gam(y + a, n + a/lambda0) posterior with n = y/lambda0,
/// the MCMC posterior under the moment-matched lognormal prior, and (when
/// `with_bym`) the MCMC posterior of region 1 under a BYM model on the complete
/// graph of `bym_regions` regions with sigma2 and tau2 fixed.
struct QuantileComparisonSpec {
  double prior_events = 8.75;
  double lambda0 = 5e-4;
  std::vector<std::int64_t> counts{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  bool with_bym = true;
  std::size_t bym_regions = 50;
  double bym_sigma2 = 0.1;
  double bym_tau2 = 0.3;
};

std::vector<QuantileRow> run_quantile_comparison(const QuantileComparisonSpec& spec, const McmcConfig& cfg);
void write_quantile_csv(const std::vector<QuantileRow>& rows, const std::string& path);

/// Unrestricted and capped BYM fits of the same data.
struct PairedReport {
  ChainOutput unrestricted;
  ChainOutput restricted;
  ComparisonTable comparison;
  Restriction restriction;

  nlohmann::json to_json() const;
};

/// Runs both fits with the same configuration and re-checks that every
/// restricted draw respects the cap (SamplerError otherwise).
PairedReport run_restricted_pipeline(const CountData& data, const AdjacencyGraph& graph, const McmcConfig& cfg,
                                     double a_cap, int m0 = kDefaultBaselineNeighbors);

struct NamedDataset {
  std::string name;
  CountData data;
  AdjacencyGraph graph;
};

struct DatasetInformativeness {
  std::string name;
  std::size_t regions = 0;
  ModelInformativeness informativeness;
};

/// Unrestricted BYM fit per data set (concurrently), one informativeness summary each.
std::vector<DatasetInformativeness> run_dataset_batch(const std::vector<NamedDataset>& sets, const McmcConfig& cfg,
                                                      int m0 = kDefaultBaselineNeighbors);

/// BYM data generator: log lambda_i = log_rate + z_i + e_i with z an ICAR(tau2)
/// draw (zero mean per component, zero on islands) and e_i ~ N(0, sigma2);
/// populations log-uniform on [population_min, population_max].
struct SyntheticBymSpec {
  double sigma2 = 0.02;
  double tau2 = 0.3;
  double log_rate = std::log(1e-3);
  double population_min = 2000.0;
  double population_max = 200000.0;
  std::uint64_t seed = 1;
  std::uint64_t stream_id = 0;
};

CountData simulate_bym_counts(const AdjacencyGraph& graph, const SyntheticBymSpec& spec);

nlohmann::json to_json(const SimStudySpec& spec);

}  // namespace carinfo
