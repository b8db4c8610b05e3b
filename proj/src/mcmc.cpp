#include "carinfo/mcmc.hpp"

#include <algorithm>

#include "carinfo/error.hpp"

namespace carinfo {

std::int64_t McmcConfig::retained_per_chain() const {
  const std::int64_t burn = effective_burn_in();
  if (thin < 1 || burn >= iterations) return 0;
  return (iterations - burn) / thin;
}

void McmcConfig::validate() const {
  const std::int64_t burn = effective_burn_in();
  if (iterations < 1) throw ConfigError("iterations must be positive");
  if (burn < 0 || burn >= iterations) {
    throw ConfigError("burn-in (" + std::to_string(burn) + ") must lie in [0, iterations=" +
                      std::to_string(iterations) + ")");
  }
  if (thin < 1) throw ConfigError("thin must be >= 1");
  if (chains < 1) throw ConfigError("chain count must be >= 1");
  if (adaptation.window < 1) throw ConfigError("adaptation window must be >= 1");
  if (!(adaptation.target_acceptance > 0.0 && adaptation.target_acceptance < 1.0)) {
    throw ConfigError("target acceptance must lie in (0, 1)");
  }
  const std::int64_t kept = retained_per_chain();
  if (kept == 0) throw ConfigError("configuration retains zero draws");
  if (kept < 100) {
    throw ConfigError("configuration retains only " + std::to_string(kept) + " draws per chain; at least 100 required");
  }
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::PoissonGamma:
      return "poisson_gamma";
    case ModelKind::PoissonLognormal:
      return "poisson_lognormal";
    case ModelKind::Bym:
      return "bym";
  }
  return "unknown";
}

std::size_t ChainOutput::draws_per_chain() const {
  if (chains.empty() || columns.empty()) return 0;
  return chains.front().values.size() / columns.size();
}

bool ChainOutput::has_column(const std::string& name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::size_t ChainOutput::column_index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw ContractError("chain output (" + to_string(model) + ") has no column '" + name + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> ChainOutput::chain_column(std::size_t chain, const std::string& name) const {
  const std::size_t col = column_index(name);
  const auto& values = chains.at(chain).values;
  const std::size_t width = columns.size();
  std::vector<double> out;
  out.reserve(values.size() / width);
  for (std::size_t row = col; row < values.size(); row += width) out.push_back(values[row]);
  return out;
}

std::vector<double> ChainOutput::pooled_column(const std::string& name) const {
  std::vector<double> out;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    auto part = chain_column(c, name);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::string region_column(const std::string& param, const std::string& region_id) {
  return param + "[" + region_id + "]";
}

}  // namespace carinfo
