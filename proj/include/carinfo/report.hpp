#pragma once

// Machine-readable outputs: draw tables, posterior summaries, comparison
// tables and run manifests. Floats go out at 17 significant digits in CSV;
// JSON uses nlohmann's shortest round-trip representation.

#include <string>
#include <vector>

#include <json.hpp>

#include "carinfo/diagnostics.hpp"
#include "carinfo/mcmc.hpp"

namespace carinfo {

inline constexpr const char* kToolVersion = "0.3.0";

nlohmann::json to_json(const McmcConfig& cfg);
McmcConfig mcmc_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PosteriorSummary& s);
nlohmann::json to_json(const ComparisonTable& table);

/// Summaries of every column in output order.
std::vector<PosteriorSummary> summarize_all(const ChainOutput& chain);

/// `chain,draw,<columns...>`, one row per retained draw.
void write_draws_csv(const ChainOutput& chain, const std::string& path);
void write_summaries_csv(const std::vector<PosteriorSummary>& summaries, const std::string& path);
/// `region_id,<label> median...[,percent_change]`.
void write_comparison_csv(const ComparisonTable& table, const std::string& path);
void write_json(const nlohmann::json& j, const std::string& path);

/// Four significant digits, for terminal tables.
std::string format_human(double x);

/// Lower-case hex SHA-256 of a file's bytes; throws ValidationError if unreadable.
std::string sha256_file(const std::string& path);

/// Everything needed to rerun a command and get bit-identical outputs.
struct RunManifest {
  struct Input {
    std::string path;
    std::string sha256;
  };

  std::string command;
  std::vector<std::string> arguments;
  std::vector<Input> inputs;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;

  void add_input(const std::string& path);
  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);

  /// True when every recorded input still hashes to its recorded digest.
  bool inputs_unchanged() const;
};

}  // namespace carinfo
