#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace carinfo {

/// Robbins-Monro tuning of random-walk scales, active only during burn-in.
struct AdaptationSettings {
  double target_acceptance = 0.44;
  int window = 50;  // iterations between scale updates
};

struct McmcConfig {
  std::int64_t iterations = 100000;
  std::optional<std::int64_t> burn_in;  // defaults to iterations / 2
  std::int64_t thin = 10;
  std::uint64_t seed = 1;
  /// Parent stream id; chain c draws from RngStream(seed, derive_stream_id(stream_id, c)).
  std::uint64_t stream_id = 0;
  AdaptationSettings adaptation;
  int chains = 2;

  std::int64_t effective_burn_in() const { return burn_in.value_or(iterations / 2); }

  /// floor((iterations - burn-in) / thin).
  std::int64_t retained_per_chain() const;

  /// Throws ConfigError unless burn-in < iterations, thin >= 1, chains >= 1
  /// and at least 100 draws are retained per chain.
  void validate() const;
};

enum class ModelKind { PoissonGamma, PoissonLognormal, Bym };

std::string to_string(ModelKind kind);

/// Retained draws of one chain, row-major (draw x column).
struct ChainDraws {
  std::uint64_t stream_id = 0;
  std::vector<double> values;
  /// Post-burn-in acceptance rate per Metropolis-updated parameter.
  std::vector<std::pair<std::string, double>> acceptance;
};

/// Everything a fit produces. Per-region columns are named `<param>[<region id>]`
/// and appear in the region order of the input data.
struct ChainOutput {
  ModelKind model = ModelKind::PoissonGamma;
  std::vector<std::string> region_ids;
  std::vector<std::string> columns;
  std::vector<ChainDraws> chains;
  McmcConfig config;
  /// Neighbour count behind the `a_hat` column (BYM only; 0 otherwise).
  int informativeness_m0 = 0;
  /// Informativeness cap in force during fitting, if any.
  std::optional<double> restriction_cap;
  /// Regions without neighbours, whose spatial effect is pinned at zero.
  std::vector<std::string> island_ids;

  std::size_t draws_per_chain() const;
  std::size_t total_draws() const { return draws_per_chain() * chains.size(); }
  bool has_column(const std::string& name) const;
  /// Throws ContractError when the column is absent.
  std::size_t column_index(const std::string& name) const;
  std::vector<double> chain_column(std::size_t chain, const std::string& name) const;
  /// Chains concatenated in order.
  std::vector<double> pooled_column(const std::string& name) const;
};

/// Column name for a per-region parameter, e.g. region_column("lambda", "40001").
std::string region_column(const std::string& param, const std::string& region_id);

}  // namespace carinfo
