#include "carinfo/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

#include "carinfo/csv.hpp"
#include "carinfo/error.hpp"

namespace carinfo {

using nlohmann::json;

json to_json(const McmcConfig& cfg) {
  return {{"iterations", cfg.iterations},
          {"burn_in", cfg.effective_burn_in()},
          {"thin", cfg.thin},
          {"seed", cfg.seed},
          {"stream_id", cfg.stream_id},
          {"chains", cfg.chains},
          {"target_acceptance", cfg.adaptation.target_acceptance},
          {"adaptation_window", cfg.adaptation.window},
          {"retained_per_chain", cfg.retained_per_chain()}};
}

McmcConfig mcmc_config_from_json(const json& j) {
  McmcConfig cfg;
  cfg.iterations = j.at("iterations").get<std::int64_t>();
  cfg.burn_in = j.at("burn_in").get<std::int64_t>();
  cfg.thin = j.at("thin").get<std::int64_t>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.stream_id = j.value("stream_id", std::uint64_t{0});
  cfg.chains = j.at("chains").get<int>();
  cfg.adaptation.target_acceptance = j.value("target_acceptance", 0.44);
  cfg.adaptation.window = j.value("adaptation_window", 50);
  return cfg;
}

json to_json(const PosteriorSummary& s) {
  return {{"parameter", s.parameter}, {"mean", s.mean}, {"sd", s.sd},     {"q025", s.q025},
          {"q25", s.q25},             {"q50", s.q50},   {"q75", s.q75},   {"q975", s.q975},
          {"ess", s.ess},             {"draws", s.draws}, {"chains", s.chains}};
}

json to_json(const ComparisonTable& table) {
  json models = json::array();
  for (const auto& m : table.models) {
    models.push_back({{"label", m.label},
                      {"model", to_string(m.model)},
                      {"m0", m.m0},
                      {"informativeness_median", m.median},
                      {"informativeness_q025", m.lower95},
                      {"informativeness_q975", m.upper95}});
  }
  json regions = json::array();
  for (std::size_t i = 0; i < table.region_ids.size(); ++i) {
    json row = {{"region_id", table.region_ids[i]}};
    json medians = json::object();
    for (std::size_t m = 0; m < table.models.size(); ++m) medians[table.models[m].label] = table.rate_medians[m][i];
    row["rate_median"] = medians;
    if (!table.percent_change.empty()) row["percent_change"] = table.percent_change[i];
    regions.push_back(row);
  }
  return {{"models", models}, {"regions", regions}};
}

std::vector<PosteriorSummary> summarize_all(const ChainOutput& chain) {
  std::vector<PosteriorSummary> out;
  out.reserve(chain.columns.size());
  for (const auto& col : chain.columns) out.push_back(summarize(chain, col));
  return out;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot open for writing");
  return out;
}

}  // namespace

void write_draws_csv(const ChainOutput& chain, const std::string& path) {
  auto out = open_out(path);
  out << "chain,draw";
  for (const auto& col : chain.columns) out << ',' << csv::escape(col);
  out << '\n';
  const std::size_t width = chain.columns.size();
  for (std::size_t c = 0; c < chain.chains.size(); ++c) {
    const auto& values = chain.chains[c].values;
    for (std::size_t row = 0; row * width < values.size(); ++row) {
      out << c + 1 << ',' << row + 1;
      for (std::size_t k = 0; k < width; ++k) out << ',' << csv::format_double(values[row * width + k]);
      out << '\n';
    }
  }
}

void write_summaries_csv(const std::vector<PosteriorSummary>& summaries, const std::string& path) {
  auto out = open_out(path);
  out << "parameter,mean,sd,q025,q25,q50,q75,q975,ess,draws,chains\n";
  for (const auto& s : summaries) {
    out << csv::escape(s.parameter);
    for (double v : {s.mean, s.sd, s.q025, s.q25, s.q50, s.q75, s.q975, s.ess}) out << ',' << csv::format_double(v);
    out << ',' << s.draws << ',' << s.chains << '\n';
  }
}

void write_comparison_csv(const ComparisonTable& table, const std::string& path) {
  auto out = open_out(path);
  out << "region_id";
  for (const auto& m : table.models) out << ',' << csv::escape(m.label + "_median");
  if (!table.percent_change.empty()) out << ",percent_change";
  out << '\n';
  for (std::size_t i = 0; i < table.region_ids.size(); ++i) {
    out << csv::escape(table.region_ids[i]);
    for (const auto& medians : table.rate_medians) out << ',' << csv::format_double(medians[i]);
    if (!table.percent_change.empty()) out << ',' << csv::format_double(table.percent_change[i]);
    out << '\n';
  }
}

void write_json(const json& j, const std::string& path) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

std::string format_human(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 initialisation failed");
  char buffer[1 << 16];
  while (in) {
    in.read(buffer, sizeof buffer);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &length);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

void RunManifest::add_input(const std::string& path) { inputs.push_back({path, sha256_file(path)}); }

json RunManifest::to_json() const {
  json in = json::array();
  for (const auto& i : inputs) in.push_back({{"path", i.path}, {"sha256", i.sha256}});
  return {{"command", command}, {"arguments", arguments}, {"inputs", in},
          {"config", config},   {"seed", seed},           {"tool_version", tool_version}};
}

RunManifest RunManifest::from_json(const json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.arguments = j.at("arguments").get<std::vector<std::string>>();
  for (const auto& i : j.at("inputs")) m.inputs.push_back({i.at("path").get<std::string>(), i.at("sha256").get<std::string>()});
  m.config = j.at("config");
  m.seed = j.at("seed").get<std::uint64_t>();
  m.tool_version = j.at("tool_version").get<std::string>();
  return m;
}

bool RunManifest::inputs_unchanged() const {
  for (const auto& i : inputs) {
    try {
      if (sha256_file(i.path) != i.sha256) return false;
    } catch (const ValidationError&) {
      return false;
    }
  }
  return true;
}

}  // namespace carinfo
