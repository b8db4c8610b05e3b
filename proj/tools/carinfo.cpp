// carinfo: fit disease-mapping models and measure how many prior events the
// model contributes.
//
// Exit codes: 0 success, 1 runtime/sampler failure, 2 usage or validation error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "carinfo/approx.hpp"
#include "carinfo/csv.hpp"
#include "carinfo/data.hpp"
#include "carinfo/error.hpp"
#include "carinfo/graph.hpp"
#include "carinfo/harness.hpp"
#include "carinfo/report.hpp"
#include "carinfo/samplers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : carinfo::Error {
  using carinfo::Error::Error;
};

std::string sig10(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

struct McmcFlags {
  std::int64_t iterations = 20000;
  std::optional<std::int64_t> burn_in;
  std::int64_t thin = 10;
  std::uint64_t seed = 1;
  int chains = 2;
  double target_acceptance = 0.44;
  int adapt_window = 50;

  void attach(CLI::App* cmd) {
    cmd->add_option("--iterations,-L", iterations, "Total MCMC iterations per chain")->capture_default_str();
    cmd->add_option("--burn-in", burn_in, "Burn-in iterations (default: iterations/2)");
    cmd->add_option("--thin", thin, "Keep every k-th post-burn-in draw")->capture_default_str();
    cmd->add_option("--seed", seed, "Root random seed")->capture_default_str();
    cmd->add_option("--chains", chains, "Independent chains")->capture_default_str();
    cmd->add_option("--target-acceptance", target_acceptance, "Random-walk target acceptance")->capture_default_str();
    cmd->add_option("--adapt-window", adapt_window, "Iterations between proposal-scale updates")->capture_default_str();
  }

  carinfo::McmcConfig config() const {
    carinfo::McmcConfig cfg;
    cfg.iterations = iterations;
    cfg.burn_in = burn_in;
    cfg.thin = thin;
    cfg.seed = seed;
    cfg.chains = chains;
    cfg.adaptation.target_acceptance = target_acceptance;
    cfg.adaptation.window = adapt_window;
    return cfg;
  }
};

fs::path output_dir(const std::string& requested, const std::string& command, std::uint64_t seed) {
  fs::path dir;
  if (!requested.empty()) {
    dir = requested;
  } else {
    const char* root = std::getenv("CARINFO_OUTPUT_ROOT");
    dir = fs::path(root && *root ? root : ".") / (command + "-seed" + std::to_string(seed));
  }
  fs::create_directories(dir);
  return dir;
}

void print_informativeness_table(const std::string& label, std::vector<double> values, int m0) {
  std::sort(values.begin(), values.end());
  std::cout << label << " informativeness (m0=" << m0 << "): median " << carinfo::format_human(carinfo::quantile_sorted(values, 0.5))
            << ", 95% interval [" << carinfo::format_human(carinfo::quantile_sorted(values, 0.025)) << ", "
            << carinfo::format_human(carinfo::quantile_sorted(values, 0.975)) << "]\n";
}

std::vector<double> a_hat_values(const carinfo::ChainOutput& chain, int m0) {
  std::vector<double> out;
  for (const auto& e : carinfo::effective_prior_events_draws(chain, m0)) out.push_back(e.a_hat);
  return out;
}

void write_fit_outputs(const carinfo::ChainOutput& chain, const fs::path& dir, int m0) {
  carinfo::write_draws_csv(chain, (dir / "draws.csv").string());
  const auto summaries = carinfo::summarize_all(chain);
  carinfo::write_summaries_csv(summaries, (dir / "summary.csv").string());
  json summary_json = json::array();
  for (const auto& s : summaries) summary_json.push_back(carinfo::to_json(s));
  json acceptance = json::array();
  for (const auto& c : chain.chains) {
    json per = json::object();
    for (const auto& [name, rate] : c.acceptance) per[name] = rate;
    acceptance.push_back(per);
  }
  carinfo::write_json({{"model", carinfo::to_string(chain.model)},
                       {"parameters", summary_json},
                       {"acceptance", acceptance},
                       {"islands", chain.island_ids}},
                      (dir / "summary.json").string());
  const auto info = carinfo::summarize_values("a_hat", a_hat_values(chain, m0));
  json info_json = carinfo::to_json(info);
  info_json["m0"] = chain.model == carinfo::ModelKind::Bym ? m0 : 0;
  if (chain.restriction_cap) info_json["restriction_cap"] = *chain.restriction_cap;
  carinfo::write_json(info_json, (dir / "informativeness.json").string());
}

int cmd_approx(std::optional<double> a, std::optional<double> b, std::optional<double> mu, std::optional<double> sigma2) {
  const bool gamma_side = a || b;
  const bool lognormal_side = mu || sigma2;
  if (gamma_side == lognormal_side) throw UsageError("supply either --a/--b or --mu/--sigma2, not both or neither");
  if (gamma_side) {
    if (!a || !b) throw UsageError("--a and --b must be given together");
    const auto ln = carinfo::gamma_to_lognormal(carinfo::GammaParams(*a, *b));
    std::cout << "mu=" << sig10(ln.mu()) << "\nsigma2=" << sig10(ln.sigma2()) << '\n';
  } else {
    if (!mu || !sigma2) throw UsageError("--mu and --sigma2 must be given together");
    const auto g = carinfo::lognormal_to_gamma(carinfo::LognormalParams(*mu, *sigma2));
    std::cout << "a=" << sig10(g.shape()) << "\nb=" << sig10(g.rate()) << '\n';
  }
  return 0;
}

int cmd_info(double sigma2, double tau2, int m0) {
  const carinfo::InformativenessQuery q(sigma2, tau2, m0);
  std::cout << "a_hat=" << sig10(carinfo::informativeness(q).a_hat) << "\nprecision=" << sig10(carinfo::conditional_precision_bound(q))
            << "\nm0=" << m0 << '\n';
  return 0;
}

struct FitArgs {
  std::string model;
  std::string counts;
  std::string adjacency;
  std::optional<double> restrict_a;
  int restrict_m0 = carinfo::kDefaultBaselineNeighbors;
  int report_m0 = carinfo::kDefaultBaselineNeighbors;
  std::string out;
};

int cmd_fit(const FitArgs& args, const McmcFlags& flags, const std::vector<std::string>& argv, CLI::App* fit_cmd) {
  const bool restricted = args.restrict_a.has_value();
  if (args.model != "bym" && (restricted || fit_cmd->count("--restrict-m0") > 0)) {
    throw UsageError("--restrict-a/--restrict-m0 apply only to --model bym");
  }
  if (args.model == "bym" && args.adjacency.empty()) throw UsageError("--model bym requires --adjacency");
  if (args.model != "bym" && !args.adjacency.empty()) throw UsageError("--adjacency applies only to --model bym");

  const auto cfg = flags.config();
  cfg.validate();
  const auto data = carinfo::load_counts(args.counts);
  carinfo::RunManifest manifest;
  manifest.command = "fit";
  manifest.arguments = argv;
  manifest.seed = cfg.seed;
  manifest.add_input(args.counts);

  carinfo::ChainOutput chain;
  int m0 = args.report_m0;
  if (args.model == "pg") {
    chain = carinfo::fit_poisson_gamma_hier(data, cfg);
  } else if (args.model == "pln") {
    chain = carinfo::fit_poisson_lognormal(data, cfg);
  } else {
    const auto graph = carinfo::load_adjacency(args.adjacency, data.region_ids);
    manifest.add_input(args.adjacency);
    std::optional<carinfo::Restriction> restriction;
    if (restricted) {
      restriction = carinfo::Restriction{*args.restrict_a, args.restrict_m0};
      m0 = args.restrict_m0;
    }
    chain = carinfo::fit_bym(data, graph, cfg, restriction);
  }

  const fs::path dir = output_dir(args.out, "fit-" + args.model, cfg.seed);
  write_fit_outputs(chain, dir, m0);
  manifest.config = {{"mcmc", carinfo::to_json(cfg)}, {"model", args.model}, {"informativeness_m0", m0}};
  if (restricted) manifest.config["restriction"] = {{"a_cap", *args.restrict_a}, {"m0", args.restrict_m0}};
  carinfo::write_json(manifest.to_json(), (dir / "manifest.json").string());

  std::cout << "model " << args.model << ", " << data.size() << " regions, " << chain.total_draws()
            << " retained draws -> " << dir.string() << '\n';
  if (!chain.island_ids.empty()) std::cout << "islands (spatial effect fixed at 0): " << chain.island_ids.size() << '\n';
  print_informativeness_table(args.model, a_hat_values(chain, m0), chain.model == carinfo::ModelKind::Bym ? m0 : 0);
  return 0;
}

struct SimulateArgs {
  std::string model = "gamma";
  std::size_t regions = 50;
  std::size_t replicate = 0;
  double a = 5.0;
  double lambda0 = 5e-4;
  double n = 20000.0;
  std::uint64_t seed = 1;
  std::size_t rows = 7;
  std::size_t cols = 11;
  double sigma2 = 0.02;
  double tau2 = 0.3;
  double rate = 1e-3;
  double pop_min = 2000.0;
  double pop_max = 200000.0;
  std::string out;
};

int cmd_simulate(const SimulateArgs& args, const std::vector<std::string>& argv) {
  const fs::path dir = output_dir(args.out, "simulate-" + args.model, args.seed);
  carinfo::RunManifest manifest;
  manifest.command = "simulate";
  manifest.arguments = argv;
  manifest.seed = args.seed;
  if (args.model == "gamma") {
    carinfo::SimStudySpec spec;
    spec.a_true = args.a;
    spec.lambda0_true = args.lambda0;
    spec.n_per_region = args.n;
    spec.root_seed = args.seed;
    const auto data = carinfo::simulate_counts(spec, args.regions, args.replicate);
    carinfo::write_counts(data, (dir / "counts.csv").string());
    manifest.config = {{"spec", carinfo::to_json(spec)}, {"regions", args.regions}, {"replicate", args.replicate}};
    std::cout << "wrote " << data.size() << " regions to " << (dir / "counts.csv").string() << '\n';
  } else if (args.model == "bym") {
    const auto graph = carinfo::lattice_graph(args.rows, args.cols);
    carinfo::SyntheticBymSpec spec;
    spec.sigma2 = args.sigma2;
    spec.tau2 = args.tau2;
    spec.log_rate = std::log(args.rate);
    spec.population_min = args.pop_min;
    spec.population_max = args.pop_max;
    spec.seed = args.seed;
    const auto data = carinfo::simulate_bym_counts(graph, spec);
    carinfo::write_counts(data, (dir / "counts.csv").string());
    carinfo::write_adjacency(graph, (dir / "adjacency.csv").string());
    manifest.config = {{"rows", args.rows},         {"cols", args.cols},       {"sigma2", args.sigma2},
                       {"tau2", args.tau2},         {"rate", args.rate},       {"population_min", args.pop_min},
                       {"population_max", args.pop_max}};
    std::cout << "wrote " << data.size() << " regions and " << graph.edge_count() << " edges to " << dir.string() << '\n';
  } else {
    throw UsageError("--model must be gamma or bym");
  }
  carinfo::write_json(manifest.to_json(), (dir / "manifest.json").string());
  return 0;
}

struct SimStudyArgs {
  double a = 5.0;
  double lambda0 = 5e-4;
  double n = 20000.0;
  std::vector<std::size_t> region_counts{10, 25, 50, 100, 200};
  std::vector<std::size_t> replicates{20, 8, 4, 2, 1};
  bool quick = false;
  bool full = false;
  std::string out;
};

int cmd_sim_study(const SimStudyArgs& args, McmcFlags flags, const std::vector<std::string>& argv, CLI::App* cmd) {
  if (args.quick && args.full) throw UsageError("--quick and --full are mutually exclusive");
  if (args.quick && cmd->count("--iterations") == 0) flags.iterations = 2000;
  if (args.full && cmd->count("--iterations") == 0) flags.iterations = 100000;
  carinfo::SimStudySpec spec;
  spec.a_true = args.a;
  spec.lambda0_true = args.lambda0;
  spec.n_per_region = args.n;
  spec.region_counts = args.region_counts;
  spec.replicates = args.replicates;
  spec.root_seed = flags.seed;
  const auto cfg = flags.config();

  const auto report = carinfo::run_sim_study(spec, cfg);
  const fs::path dir = output_dir(args.out, "sim-study", flags.seed);
  const json report_json = report.to_json();
  carinfo::write_json(report_json, (dir / "report.json").string());
  report.write_csv((dir / "informativeness.csv").string());
  {
    std::ofstream draws(dir / "informativeness_draws.csv", std::ios::binary);
    draws << "model,draw,a_hat\n";
    for (std::size_t i = 0; i < report.gamma_draws_largest.size(); ++i) {
      draws << "gamma," << i << ',' << carinfo::csv::format_double(report.gamma_draws_largest[i]) << '\n';
    }
    for (std::size_t i = 0; i < report.lognormal_draws_largest.size(); ++i) {
      draws << "lognormal," << i << ',' << carinfo::csv::format_double(report.lognormal_draws_largest[i]) << '\n';
    }
  }
  carinfo::RunManifest manifest;
  manifest.command = "sim-study";
  manifest.arguments = argv;
  manifest.seed = flags.seed;
  manifest.config = {{"spec", carinfo::to_json(spec)}, {"mcmc", carinfo::to_json(cfg)}};
  carinfo::write_json(manifest.to_json(), (dir / "manifest.json").string());

  std::cout << "I     rep  gamma a (median [95%])        lognormal a_hat (median [95%])\n";
  for (const auto& e : report.entries) {
    const auto& g = e.gamma_informativeness;
    const auto& l = e.lognormal_informativeness;
    std::printf("%-5zu %-4zu %-8s [%s, %s]%*s %-8s [%s, %s]\n", e.region_count, e.replicate,
                carinfo::format_human(g.q50).c_str(), carinfo::format_human(g.q025).c_str(),
                carinfo::format_human(g.q975).c_str(), 4, "", carinfo::format_human(l.q50).c_str(),
                carinfo::format_human(l.q025).c_str(), carinfo::format_human(l.q975).c_str());
  }
  std::cout << "report -> " << dir.string() << '\n';
  return 0;
}

int cmd_quantiles(double a, double lambda0, bool no_bym, const McmcFlags& flags, const std::string& out,
                  const std::vector<std::string>& argv) {
  carinfo::QuantileComparisonSpec spec;
  spec.prior_events = a;
  spec.lambda0 = lambda0;
  spec.with_bym = !no_bym;
  const auto cfg = flags.config();
  const auto rows = carinfo::run_quantile_comparison(spec, cfg);
  const fs::path dir = output_dir(out, "quantiles", flags.seed);
  carinfo::write_quantile_csv(rows, (dir / "quantiles.csv").string());
  carinfo::RunManifest manifest;
  manifest.command = "quantiles";
  manifest.arguments = argv;
  manifest.seed = flags.seed;
  manifest.config = {{"prior_events", a}, {"lambda0", lambda0}, {"with_bym", !no_bym}, {"mcmc", carinfo::to_json(cfg)}};
  carinfo::write_json(manifest.to_json(), (dir / "manifest.json").string());
  std::cout << "y   method          q2.5        median      q97.5\n";
  for (const auto& r : rows) {
    std::printf("%-3lld %-15s %-11s %-11s %s\n", static_cast<long long>(r.y), r.method.c_str(),
                carinfo::format_human(r.q025).c_str(), carinfo::format_human(r.q50).c_str(),
                carinfo::format_human(r.q975).c_str());
  }
  return 0;
}

int cmd_pipeline(const std::string& counts, const std::string& adjacency, double a_cap, int m0, const McmcFlags& flags,
                 const std::string& out, const std::vector<std::string>& argv) {
  const auto cfg = flags.config();
  cfg.validate();
  const auto data = carinfo::load_counts(counts);
  const auto graph = carinfo::load_adjacency(adjacency, data.region_ids);
  const auto report = carinfo::run_restricted_pipeline(data, graph, cfg, a_cap, m0);
  const fs::path dir = output_dir(out, "pipeline", cfg.seed);
  carinfo::write_json(report.to_json(), (dir / "report.json").string());
  carinfo::write_comparison_csv(report.comparison, (dir / "rates.csv").string());
  carinfo::write_draws_csv(report.unrestricted, (dir / "draws_unrestricted.csv").string());
  carinfo::write_draws_csv(report.restricted, (dir / "draws_restricted.csv").string());
  carinfo::RunManifest manifest;
  manifest.command = "pipeline";
  manifest.arguments = argv;
  manifest.seed = cfg.seed;
  manifest.add_input(counts);
  manifest.add_input(adjacency);
  manifest.config = {{"mcmc", carinfo::to_json(cfg)}, {"restriction", {{"a_cap", a_cap}, {"m0", m0}}}};
  carinfo::write_json(manifest.to_json(), (dir / "manifest.json").string());
  print_informativeness_table("unrestricted", a_hat_values(report.unrestricted, m0), m0);
  print_informativeness_table("restricted", a_hat_values(report.restricted, m0), m0);
  std::cout << "report -> " << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disease-mapping fits and informativeness of the BYM model", "carinfo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", carinfo::kToolVersion);
  const std::vector<std::string> args_echo(argv + 1, argv + argc);

  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> mu;
  std::optional<double> sigma2;
  auto* approx = app.add_subcommand("approx", "Moment-match Gam(a, b) and LN(mu, sigma2) in either direction");
  approx->add_option("--a", a, "Gamma shape (prior events)");
  approx->add_option("--b", b, "Gamma rate (prior person-time)");
  approx->add_option("--mu", mu, "Lognormal log-mean");
  approx->add_option("--sigma2", sigma2, "Lognormal log-variance");

  double info_sigma2 = 0.0;
  double info_tau2 = 0.0;
  int info_m0 = 0;
  auto* info = app.add_subcommand("info", "Effective prior events of the BYM model and its precision bound");
  info->add_option("--sigma2", info_sigma2, "Non-spatial variance")->required();
  info->add_option("--tau2", info_tau2, "ICAR variance")->required();
  info->add_option("--m0", info_m0, "Baseline neighbour count")->required();

  FitArgs fit_args;
  McmcFlags fit_flags;
  auto* fit = app.add_subcommand("fit", "Fit a model to a counts file");
  fit->add_option("--model", fit_args.model, "pg | pln | bym")->required()->check(CLI::IsMember({"pg", "pln", "bym"}));
  fit->add_option("--counts", fit_args.counts, "CSV: region_id,y,n[,x1,...]")->required();
  fit->add_option("--adjacency", fit_args.adjacency, "CSV: region_a,region_b (bym only)");
  fit->add_option("--restrict-a", fit_args.restrict_a, "Cap on effective prior events (bym only)");
  fit->add_option("--restrict-m0", fit_args.restrict_m0, "Neighbour count for the cap")->capture_default_str();
  fit->add_option("--report-m0", fit_args.report_m0, "Neighbour count for reporting (unrestricted bym)")
      ->capture_default_str();
  fit->add_option("--out", fit_args.out, "Output directory");
  fit_flags.attach(fit);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Write a synthetic counts file (and adjacency for bym)");
  simulate->add_option("--model", sim_args.model, "gamma | bym")->capture_default_str();
  simulate->add_option("--I", sim_args.regions, "Regions (gamma)")->capture_default_str();
  simulate->add_option("--replicate", sim_args.replicate, "Replicate index (gamma)")->capture_default_str();
  simulate->add_option("--a", sim_args.a, "True gamma shape")->capture_default_str();
  simulate->add_option("--lambda0", sim_args.lambda0, "True mean rate")->capture_default_str();
  simulate->add_option("--n", sim_args.n, "Population per region (gamma)")->capture_default_str();
  simulate->add_option("--rows", sim_args.rows, "Lattice rows (bym)")->capture_default_str();
  simulate->add_option("--cols", sim_args.cols, "Lattice columns (bym)")->capture_default_str();
  simulate->add_option("--sigma2", sim_args.sigma2, "True sigma2 (bym)")->capture_default_str();
  simulate->add_option("--tau2", sim_args.tau2, "True tau2 (bym)")->capture_default_str();
  simulate->add_option("--rate", sim_args.rate, "Baseline rate (bym)")->capture_default_str();
  simulate->add_option("--pop-min", sim_args.pop_min, "Smallest population (bym)")->capture_default_str();
  simulate->add_option("--pop-max", sim_args.pop_max, "Largest population (bym)")->capture_default_str();
  simulate->add_option("--seed", sim_args.seed, "Seed")->capture_default_str();
  simulate->add_option("--out", sim_args.out, "Output directory");

  SimStudyArgs study_args;
  McmcFlags study_flags;
  auto* study = app.add_subcommand("sim-study", "Gamma vs lognormal informativeness simulation study");
  study->add_option("--a", study_args.a, "True gamma shape")->capture_default_str();
  study->add_option("--lambda0", study_args.lambda0, "True mean rate")->capture_default_str();
  study->add_option("--n", study_args.n, "Population per region")->capture_default_str();
  study->add_option("--region-counts", study_args.region_counts, "Region counts I")->delimiter(',');
  study->add_option("--replicates", study_args.replicates, "Replicates per region count")->delimiter(',');
  study->add_flag("--quick", study_args.quick, "Smoke run with 2,000 iterations");
  study->add_flag("--full", study_args.full, "100,000 iterations");
  study->add_option("--out", study_args.out, "Output directory");
  study_flags.attach(study);

  double q_a = 8.75;
  double q_lambda0 = 5e-4;
  bool q_no_bym = false;
  std::string q_out;
  McmcFlags q_flags;
  q_flags.iterations = 60000;
  q_flags.burn_in = 10000;
  q_flags.thin = 10;
  auto* quantiles = app.add_subcommand("quantiles", "Exact gamma vs lognormal and BYM posterior quantiles, y = 1..20");
  quantiles->add_option("--a", q_a, "Prior events")->capture_default_str();
  quantiles->add_option("--lambda0", q_lambda0, "Prior mean rate")->capture_default_str();
  quantiles->add_flag("--no-bym", q_no_bym, "Skip the complete-graph BYM fits");
  quantiles->add_option("--out", q_out, "Output directory");
  q_flags.attach(quantiles);

  std::string p_counts;
  std::string p_adjacency;
  double p_cap = 6.0;
  int p_m0 = carinfo::kDefaultBaselineNeighbors;
  std::string p_out;
  McmcFlags p_flags;
  auto* pipeline = app.add_subcommand("pipeline", "Unrestricted vs restricted BYM fits with a rate comparison table");
  pipeline->add_option("--counts", p_counts, "Counts CSV")->required();
  pipeline->add_option("--adjacency", p_adjacency, "Adjacency CSV")->required();
  pipeline->add_option("--restrict-a", p_cap, "Cap on effective prior events")->capture_default_str();
  pipeline->add_option("--restrict-m0", p_m0, "Neighbour count for the cap")->capture_default_str();
  pipeline->add_option("--out", p_out, "Output directory");
  p_flags.attach(pipeline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*approx) return cmd_approx(a, b, mu, sigma2);
    if (*info) return cmd_info(info_sigma2, info_tau2, info_m0);
    if (*fit) return cmd_fit(fit_args, fit_flags, args_echo, fit);
    if (*simulate) return cmd_simulate(sim_args, args_echo);
    if (*study) return cmd_sim_study(study_args, study_flags, args_echo, study);
    if (*quantiles) return cmd_quantiles(q_a, q_lambda0, q_no_bym, q_flags, q_out, args_echo);
    if (*pipeline) return cmd_pipeline(p_counts, p_adjacency, p_cap, p_m0, p_flags, p_out, args_echo);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const carinfo::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const carinfo::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const carinfo::DomainError& e) {
    std::cerr << "invalid value: " << e.what() << '\n';
    return kExitUsage;
  } catch (const carinfo::OverflowError& e) {
    std::cerr << "invalid value: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
