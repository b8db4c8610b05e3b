#pragma once

#include <span>
#include <string>
#include <vector>

#include "carinfo/mcmc.hpp"

namespace carinfo {

/// Mean, sd, type-7 quantiles (2.5, 25, 50, 75, 97.5%) and Monte-Carlo
/// effective sample size of one parameter, chains pooled.
struct PosteriorSummary {
  std::string parameter;
  double mean = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double q975 = 0.0;
  double ess = 0.0;
  std::size_t draws = 0;
  std::size_t chains = 0;
};

/// Hyndman-Fan type 7 (linear interpolation between order statistics) on
/// already-sorted values; p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

/// ESS of one chain by Geyer's initial positive sequence: autocorrelations are
/// summed in adjacent pairs until a pair sum turns non-positive, with pair sums
/// clipped to be non-increasing. A constant chain reports its length. Result
/// lies in (0, draws.size()].
double effective_sample_size(std::span<const double> draws);

/// Summary over all chains of `chain` for column `parameter`; ESS is the sum of
/// per-chain ESS. Throws ContractError for unknown columns or empty output.
PosteriorSummary summarize(const ChainOutput& chain, const std::string& parameter);

/// Summary of a bare sample treated as one chain.
PosteriorSummary summarize_values(const std::string& parameter, std::span<const double> values);

/// Informativeness of one fitted model.
struct ModelInformativeness {
  std::string label;
  ModelKind model;
  int m0;
  double median;
  double lower95;
  double upper95;
};

/// Cross-model table: informativeness per model, posterior median rate per
/// region and model, and the symmetric percent difference between the first
/// two models, 200 (u - r) / (u + r), positive when the first model's rate is
/// higher. The column is exactly antisymmetric in the order of the two models.
struct ComparisonTable {
  std::vector<ModelInformativeness> models;
  std::vector<std::string> region_ids;
  std::vector<std::vector<double>> rate_medians;  // [model][region]
  std::vector<double> percent_change;             // empty with fewer than two models
};

struct LabelledChain {
  std::string label;
  const ChainOutput* chain;
};

/// Regions are matched by id; throws ContractError when the region sets differ.
ComparisonTable compare_models(const std::vector<LabelledChain>& chains, int m0);

}  // namespace carinfo
