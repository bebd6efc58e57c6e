#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ndl/generators.hpp"

namespace ndl {

enum class Regime { sub, super };
std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

struct ExperimentConfig {
  Family family = Family::random_regular;
  std::size_t n = 200000;       // hypercube: derived as 2^d
  std::size_t d = 20;           // hypercube: the dimension
  std::uint64_t graph_seed = 1;
  std::size_t blowup_factor = 2;  // blowup: base random regular graph on base_n, base_d
  std::size_t base_n = 0;
  std::size_t base_d = 0;
  std::string graph;            // load this graph file instead of generating

  double epsilon = 0.2;
  double alpha = 0.1;
  Regime regime = Regime::super;
  double p_override = 0.0;  // key "p": when positive, replaces (1 -+ epsilon)/d
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::size_t k_max = 0;  // 0 means floor(1/alpha)
  std::vector<std::string> checkers;

  // Relative tolerances of the median comparisons.
  std::map<std::string, double> tolerances = {
      {"L1", 0.10}, {"T1", 0.10}, {"T2", 0.15}, {"Zp", 0.05}, {"e_L1", 0.10}};
  // Required fraction of trials for the per-trial comparisons.
  double rate_window = 0.8;
  double rate_L2 = 0.95;
  double rate_cycle = 1.0;
  double rate_subcritical = 1.0;
  double rate_checkers = 0.95;
  double sub_median_limit = 200.0;

  bool spectrum = true;
  double spectrum_tol = 1e-8;
  bool regenerate_graph = false;
  bool timing = false;
  double beta_test = 0.01;
  double stream_c = 1.0;
  std::size_t mixing_pairs = 1000;
  std::size_t concentration_sets = 20;
  std::size_t expansion_subsets = 1000;
  std::size_t giant_samples = 200;
  std::size_t blowup_subsets = 100;
  std::size_t workers = 0;  // 0 means the OpenMP default
  std::string out;

  /// Generator spec for the configured family, with an explicit graph seed.
  GenSpec gen_spec(std::uint64_t seed) const;
  GenSpec gen_spec() const { return gen_spec(graph_seed); }
  /// (1 -+ epsilon) / degree for the configured regime, unless overridden.
  double p(std::size_t degree) const noexcept;
  std::size_t effective_k_max() const noexcept;
};

/// Every recognized key, in canonical order.
const std::vector<std::string>& config_keys();

/// Sets one key from its text form. Throws ConfigError on an unknown key or a
/// malformed value.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Text form of one key as set_config_value accepts it.
std::string get_config_value(const ExperimentConfig& cfg, const std::string& key);

/// Parses "key = value" lines; '#' starts a comment, blank lines are ignored.
/// Throws ConfigError naming the line on bad syntax or repeated keys.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in);

ExperimentConfig load_config(const std::string& path);
void apply_key_values(ExperimentConfig& cfg, const std::vector<std::pair<std::string, std::string>>& kv);

/// Throws ConfigError on an inconsistent configuration (trials == 0,
/// non-positive tolerances, bad ranges, unknown checkers, infeasible graph).
void validate(const ExperimentConfig& cfg);

/// The full configuration as key=value lines in canonical key order.
std::string dump_config(const ExperimentConfig& cfg);

}  // namespace ndl
