#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ndl/census.hpp"
#include "ndl/config.hpp"
#include "ndl/errors.hpp"
#include "ndl/generators.hpp"
#include "ndl/graph_io.hpp"
#include "ndl/harness.hpp"
#include "ndl/percolation.hpp"
#include "ndl/rng.hpp"
#include "ndl/serialize.hpp"
#include "ndl/spectral.hpp"
#include "ndl/theory.hpp"
#include "ndl/verify.hpp"

namespace {

using ndl::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct ConfigOptions {
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_config_options(CLI::App* sub, ConfigOptions& o, const std::set<std::string>& required = {}) {
  sub->add_option("--config", o.config_path, "Flat key=value configuration file")->check(CLI::ExistingFile);
  for (const auto& key : ndl::config_keys()) {
    auto* opt = sub->add_option("--" + key, o.values[key], "Override configuration key '" + key + "'");
    if (required.count(key)) opt->required();
  }
}

std::vector<std::pair<std::string, std::string>> explicit_overrides(const ConfigOptions& o, const CLI::App* sub) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& key : ndl::config_keys()) {
    if (sub->count("--" + key) > 0) out.emplace_back(key, o.values.at(key));
  }
  return out;
}

// Config-file keys followed by explicit flags, applied on top of a stored
// configuration.
std::vector<std::pair<std::string, std::string>> layered_overrides(const ConfigOptions& o, const CLI::App* sub) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw ndl::InputError("cannot open config file " + o.config_path);
    out = ndl::parse_key_values(in);
  }
  for (auto& kv : explicit_overrides(o, sub)) out.push_back(std::move(kv));
  return out;
}

ndl::ExperimentConfig resolve(const ConfigOptions& o, const CLI::App* sub) {
  ndl::ExperimentConfig cfg = o.config_path.empty() ? ndl::ExperimentConfig{} : ndl::load_config(o.config_path);
  ndl::apply_key_values(cfg, explicit_overrides(o, sub));
  return cfg;
}

ndl::PercolationSample trial_sample(const ndl::ExperimentConfig& cfg, const ndl::RegularGraph& g,
                                    std::size_t trial, std::vector<std::uint8_t>* coins) {
  const std::uint64_t seed = ndl::trial_seed(cfg.seed, trial);
  ndl::CoinStream stream(ndl::derive_seed(seed, 0, ndl::Purpose::coins), cfg.p(g.degree()));
  ndl::DfsTrace trace = ndl::run_dfs(g, stream);
  if (coins) *coins = trace.coins;
  return ndl::sample_from_trace(trace, cfg.p(g.degree()), seed);
}

int cmd_generate(const ndl::ExperimentConfig& cfg) {
  if (cfg.out.empty()) throw ndl::ConfigError("--out must name the graph file ('-' for stdout)");
  const ndl::RegularGraph g = ndl::load_or_generate(cfg);
  if (cfg.out == "-") {
    ndl::write_graph(std::cout, g);
  } else {
    ndl::write_graph(std::filesystem::path(cfg.out), g);
    std::cerr << "wrote " << cfg.out << ": n=" << g.num_vertices() << " d=" << g.degree() << "\n";
  }
  return kExitPass;
}

int cmd_spectrum(const ndl::ExperimentConfig& cfg, const std::string& method) {
  const ndl::RegularGraph g = ndl::load_or_generate(cfg);
  ndl::SpectrumOptions opts;
  opts.tol = cfg.spectrum_tol;
  if (method == "dense") {
    opts.method = ndl::SpectrumMethod::dense;
  } else if (method == "iterative") {
    opts.method = ndl::SpectrumMethod::iterative;
  } else if (method != "automatic") {
    throw ndl::ConfigError("method must be automatic, dense or iterative");
  }
  const ndl::SpectrumReport report = ndl::compute_spectrum(g, opts);
  json j = {{"n", g.num_vertices()}, {"d", g.degree()}};
  j["spectrum"] = ndl::to_json(report);
  j["certificate"] = ndl::to_json(ndl::certify(report, cfg.alpha));
  std::cout << j.dump() << "\n";
  return kExitPass;
}

int cmd_percolate(const ndl::ExperimentConfig& cfg, std::size_t trial, const std::string& witness_path) {
  const ndl::RegularGraph g = ndl::load_or_generate(cfg);
  std::cout << ndl::run_trial(cfg, g, trial).dump() << "\n";
  if (!witness_path.empty()) {
    const auto sample = trial_sample(cfg, g, trial, nullptr);
    const auto witness = ndl::longest_cycle_witness(g, sample);
    std::ofstream out(witness_path, std::ios::binary);
    if (!out) throw ndl::InputError("cannot write " + witness_path);
    for (std::size_t i = 0; i < witness.cycle.size(); ++i) out << (i ? " " : "") << witness.cycle[i];
    out << "\n";
  }
  return kExitPass;
}

int cmd_sweep(const ndl::ExperimentConfig& cfg, bool resume, bool quiet) {
  const ndl::SweepResult r = ndl::run_sweep(cfg, resume, quiet ? nullptr : &std::cerr);
  std::cout << ndl::comparison_table(r.comparison);
  std::cerr << "records: " << r.records_path << "\nsummary: " << r.csv_path << "\n";
  return r.comparison.pass ? kExitPass : kExitFail;
}

int cmd_verify(const ndl::ExperimentConfig& cfg) {
  const ndl::RegularGraph g = ndl::load_or_generate(cfg);
  std::vector<std::string> ids = cfg.checkers;
  if (ids.empty()) {
    ids = {"mixing", "degree_concentration", "expansion_window", "stream"};
    if (g.blowup_factor() != 0) ids.push_back("blowup_pairs");
    if (cfg.regime == ndl::Regime::super) ids.push_back("giant_expansion");
  }
  std::optional<ndl::SpectrumReport> report;
  auto spectrum = [&]() -> const ndl::SpectrumReport& {
    if (!report) {
      ndl::SpectrumOptions opts;
      opts.tol = cfg.spectrum_tol;
      report = ndl::compute_spectrum(g, opts);
    }
    return *report;
  };
  std::vector<std::uint8_t> coins;
  const ndl::PercolationSample sample = trial_sample(cfg, g, 0, &coins);
  const std::uint64_t seed = ndl::derive_seed(cfg.seed, 0, ndl::Purpose::checker);
  bool all_pass = true;
  for (const auto& id : ids) {
    ndl::ViolationReport r;
    if (id == "mixing") {
      r = ndl::check_mixing(g, spectrum(), cfg.mixing_pairs, seed);
    } else if (id == "degree_concentration") {
      const std::size_t n = g.num_vertices();
      std::vector<ndl::vertex_t> ids_all(n);
      for (std::size_t v = 0; v < n; ++v) ids_all[v] = static_cast<ndl::vertex_t>(v);
      ndl::SplitMix64 rng(seed);
      ndl::partial_shuffle(std::span<ndl::vertex_t>(ids_all), (n + 1) / 2, rng);
      const auto b = ndl::VertexSet::from_list(n, std::span<const ndl::vertex_t>(ids_all.data(), (n + 1) / 2));
      r = ndl::check_degree_concentration(g, spectrum(), b, cfg.alpha);
    } else if (id == "expansion_window") {
      r = ndl::check_expansion_window(g, sample, cfg.alpha, cfg.expansion_subsets, seed);
    } else if (id == "blowup_pairs") {
      r = ndl::check_blowup_pairs(g, cfg.blowup_subsets, seed);
    } else if (id == "stream") {
      r = ndl::check_stream_properties(coins, cfg.epsilon, static_cast<double>(g.degree()),
                                       cfg.regime == ndl::Regime::super ? ndl::StreamMode::super
                                                                        : ndl::StreamMode::sub,
                                       cfg.stream_c);
    } else if (id == "giant_expansion") {
      r = ndl::check_giant_expansion(g, sample, cfg.epsilon, cfg.alpha, cfg.giant_samples, cfg.beta_test, seed);
    } else {
      throw ndl::ConfigError("unknown checker '" + id + "'");
    }
    all_pass = all_pass && r.pass;
    std::cout << ndl::to_json(r).dump() << "\n";
  }
  return all_pass ? kExitPass : kExitFail;
}

int cmd_theory(const ndl::ExperimentConfig& cfg, bool as_json) {
  const double n = static_cast<double>(cfg.family == ndl::Family::hypercube ? (std::size_t{1} << cfg.d) : cfg.n);
  const double d = static_cast<double>(cfg.d);
  const ndl::TheoryPrediction t = ndl::predict(n, d, cfg.epsilon, cfg.alpha, cfg.effective_k_max());
  const auto mass = ndl::series_tree_mass(cfg.epsilon, 1e-12);
  const auto edge_mass = ndl::series_tree_edge_mass(cfg.epsilon, 1e-12);
  if (as_json) {
    json j = ndl::to_json(t);
    j["series_tree_mass"] = ndl::to_json(mass);
    j["series_tree_edge_mass"] = ndl::to_json(edge_mass);
    j["delta_alpha"] = ndl::delta_of_alpha(cfg.alpha);
    std::cout << j.dump() << "\n";
    return kExitPass;
  }
  auto row = [](const char* name, double v) { std::printf("%-28s %.10g\n", name, v); };
  row("n", t.n);
  row("d", t.d);
  row("epsilon", t.epsilon);
  row("alpha", t.alpha);
  row("x", t.x);
  row("y", t.y);
  row("giant_size", t.giant_size);
  row("giant_size_tol", t.giant_size_tol);
  row("giant_edges", t.giant_edges);
  row("giant_edges_tol", t.giant_edges_tol);
  row("edges_total", t.edges_total);
  row("small_tree_edges", t.small_tree_edges);
  row("subcritical_bound", t.subcritical_bound);
  row("straggler_bound", t.straggler_bound);
  row("cycle_bound", t.cycle_bound);
  row("expansion_min_size", t.expansion_min_size);
  row("expansion_max_size", t.expansion_max_size);
  row("delta_alpha", ndl::delta_of_alpha(cfg.alpha));
  row("series_tree_mass", mass.value);
  row("series_tree_edge_mass", edge_mass.value);
  for (std::size_t k = 1; k <= t.tree_counts.size(); ++k) {
    const std::string name = "tree_count_" + std::to_string(k);
    row(name.c_str(), t.tree_counts[k - 1]);
  }
  std::printf("%-28s giant_size=%d uniqueness=%d giant_edges=%d long_cycle=%d giant_expansion=%d\n", "admissible",
              t.admissible.giant_size, t.admissible.uniqueness, t.admissible.giant_edges, t.admissible.long_cycle,
              t.admissible.giant_expansion);
  return kExitPass;
}

int cmd_compare(const std::string& path, const std::vector<std::pair<std::string, std::string>>& overrides,
                const std::string& csv_path) {
  const ndl::Comparison c = ndl::compare_file(path, overrides);
  std::cout << ndl::comparison_table(c);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw ndl::InputError("cannot write " + csv_path);
    out << ndl::comparison_csv(c);
  }
  return c.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Site percolation lab for d-regular pseudo-random graphs"};
  app.require_subcommand(1);

  ConfigOptions gen_opts, spec_opts, perc_opts, sweep_opts, verify_opts, theory_opts, compare_opts;

  auto* generate = app.add_subcommand("generate", "Generate a graph and write it in ndl-graph format");
  add_config_options(generate, gen_opts);

  auto* spectrum = app.add_subcommand("spectrum", "Extreme eigenvalues and the spectral certificate");
  add_config_options(spectrum, spec_opts);
  std::string method = "automatic";
  spectrum->add_option("--method", method, "automatic, dense or iterative");

  auto* percolate = app.add_subcommand("percolate", "Run one trial and print its record");
  add_config_options(percolate, perc_opts);
  std::size_t trial = 0;
  std::string witness;
  percolate->add_option("--trial", trial, "Trial index");
  percolate->add_option("--witness", witness, "Write the longest cycle witness to this file");

  auto* sweep = app.add_subcommand("sweep", "Run a seeded sweep and write JSON-lines records and a CSV summary");
  add_config_options(sweep, sweep_opts, {"seed", "trials", "out"});
  bool resume = false;
  bool quiet = false;
  sweep->add_flag("--resume", resume, "Keep the intact prefix of an existing record file");
  sweep->add_flag("--quiet", quiet, "No progress output");

  auto* verify = app.add_subcommand("verify", "Run structural checkers on a graph");
  add_config_options(verify, verify_opts);

  auto* theory = app.add_subcommand("theory", "Print closed-form predictions");
  add_config_options(theory, theory_opts);
  bool theory_json = false;
  theory->add_flag("--json", theory_json, "Print as one JSON object");

  auto* compare = app.add_subcommand("compare", "Compare a complete record file against the predictions");
  add_config_options(compare, compare_opts);
  std::string records;
  std::string csv_out;
  compare->add_option("records", records, "Record file written by sweep")->required();
  compare->add_option("--csv", csv_out, "Also write the comparison as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitError;
  }

  try {
    if (generate->parsed()) return cmd_generate(resolve(gen_opts, generate));
    if (spectrum->parsed()) return cmd_spectrum(resolve(spec_opts, spectrum), method);
    if (percolate->parsed()) return cmd_percolate(resolve(perc_opts, percolate), trial, witness);
    if (sweep->parsed()) return cmd_sweep(resolve(sweep_opts, sweep), resume, quiet);
    if (verify->parsed()) return cmd_verify(resolve(verify_opts, verify));
    if (theory->parsed()) return cmd_theory(resolve(theory_opts, theory), theory_json);
    if (compare->parsed()) return cmd_compare(records, layered_overrides(compare_opts, compare), csv_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
