#include "ndl/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>

#include "ndl/errors.hpp"
#include "ndl/verify.hpp"

namespace ndl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  int base = 10;
  std::string_view text = v;
  if (text.starts_with("0x") || text.starts_with("0X")) {
    text.remove_prefix(2);
    base = 16;
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out, base);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty() || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a real number, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

struct Field {
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
};

template <class T>
Field size_field(T ExperimentConfig::*m) {
  return {[m](const ExperimentConfig& c) { return std::to_string(c.*m); },
          [m](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.*m = static_cast<T>(parse_u64(k, v));
          }};
}

Field double_field(double ExperimentConfig::*m) {
  return {[m](const ExperimentConfig& c) { return format_double(c.*m); },
          [m](ExperimentConfig& c, const std::string& k, const std::string& v) { c.*m = parse_double(k, v); }};
}

Field bool_field(bool ExperimentConfig::*m) {
  return {[m](const ExperimentConfig& c) { return std::string(c.*m ? "true" : "false"); },
          [m](ExperimentConfig& c, const std::string& k, const std::string& v) { c.*m = parse_bool(k, v); }};
}

Field string_field(std::string ExperimentConfig::*m) {
  return {[m](const ExperimentConfig& c) { return c.*m; },
          [m](ExperimentConfig& c, const std::string&, const std::string& v) { c.*m = v; }};
}

Field tolerance_field(const std::string& metric) {
  return {[metric](const ExperimentConfig& c) { return format_double(c.tolerances.at(metric)); },
          [metric](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.tolerances[metric] = parse_double(k, v);
          }};
}

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = [] {
    std::vector<std::pair<std::string, Field>> t;
    t.emplace_back("family", Field{[](const ExperimentConfig& c) { return to_string(c.family); },
                                   [](ExperimentConfig& c, const std::string& k, const std::string& v) {
                                     try {
                                       c.family = family_from_string(v);
                                     } catch (const std::exception&) {
                                       throw ConfigError(k + ": unknown graph family '" + v + "'");
                                     }
                                   }});
    t.emplace_back("n", size_field(&ExperimentConfig::n));
    t.emplace_back("d", size_field(&ExperimentConfig::d));
    t.emplace_back("graph_seed", size_field(&ExperimentConfig::graph_seed));
    t.emplace_back("blowup_factor", size_field(&ExperimentConfig::blowup_factor));
    t.emplace_back("base_n", size_field(&ExperimentConfig::base_n));
    t.emplace_back("base_d", size_field(&ExperimentConfig::base_d));
    t.emplace_back("graph", string_field(&ExperimentConfig::graph));
    t.emplace_back("epsilon", double_field(&ExperimentConfig::epsilon));
    t.emplace_back("alpha", double_field(&ExperimentConfig::alpha));
    t.emplace_back("regime", Field{[](const ExperimentConfig& c) { return to_string(c.regime); },
                                   [](ExperimentConfig& c, const std::string&, const std::string& v) {
                                     c.regime = regime_from_string(v);
                                   }});
    t.emplace_back("p", double_field(&ExperimentConfig::p_override));
    t.emplace_back("trials", size_field(&ExperimentConfig::trials));
    t.emplace_back("seed", size_field(&ExperimentConfig::seed));
    t.emplace_back("k_max", size_field(&ExperimentConfig::k_max));
    t.emplace_back("checkers", Field{[](const ExperimentConfig& c) {
                                       std::string s;
                                       for (const auto& id : c.checkers) s += (s.empty() ? "" : ",") + id;
                                       return s;
                                     },
                                     [](ExperimentConfig& c, const std::string&, const std::string& v) {
                                       c.checkers.clear();
                                       std::stringstream ss(v);
                                       std::string id;
                                       while (std::getline(ss, id, ',')) {
                                         id = trim(id);
                                         if (!id.empty()) c.checkers.push_back(id);
                                       }
                                     }});
    for (const char* m : {"L1", "T1", "T2", "Zp", "e_L1"}) t.emplace_back(std::string("tol.") + m, tolerance_field(m));
    t.emplace_back("rate.window", double_field(&ExperimentConfig::rate_window));
    t.emplace_back("rate.L2", double_field(&ExperimentConfig::rate_L2));
    t.emplace_back("rate.cycle", double_field(&ExperimentConfig::rate_cycle));
    t.emplace_back("rate.subcritical", double_field(&ExperimentConfig::rate_subcritical));
    t.emplace_back("rate.checkers", double_field(&ExperimentConfig::rate_checkers));
    t.emplace_back("sub_median_limit", double_field(&ExperimentConfig::sub_median_limit));
    t.emplace_back("spectrum", bool_field(&ExperimentConfig::spectrum));
    t.emplace_back("spectrum_tol", double_field(&ExperimentConfig::spectrum_tol));
    t.emplace_back("regenerate_graph", bool_field(&ExperimentConfig::regenerate_graph));
    t.emplace_back("timing", bool_field(&ExperimentConfig::timing));
    t.emplace_back("beta_test", double_field(&ExperimentConfig::beta_test));
    t.emplace_back("stream_c", double_field(&ExperimentConfig::stream_c));
    t.emplace_back("mixing_pairs", size_field(&ExperimentConfig::mixing_pairs));
    t.emplace_back("concentration_sets", size_field(&ExperimentConfig::concentration_sets));
    t.emplace_back("expansion_subsets", size_field(&ExperimentConfig::expansion_subsets));
    t.emplace_back("giant_samples", size_field(&ExperimentConfig::giant_samples));
    t.emplace_back("blowup_subsets", size_field(&ExperimentConfig::blowup_subsets));
    t.emplace_back("workers", size_field(&ExperimentConfig::workers));
    t.emplace_back("out", string_field(&ExperimentConfig::out));
    return t;
  }();
  return table;
}

const Field& field(const std::string& key) {
  for (const auto& [k, f] : fields()) {
    if (k == key) return f;
  }
  throw ConfigError("unknown configuration key '" + key + "'");
}

}  // namespace

std::string to_string(Regime r) { return r == Regime::sub ? "sub" : "super"; }

Regime regime_from_string(const std::string& s) {
  if (s == "sub") return Regime::sub;
  if (s == "super") return Regime::super;
  throw ConfigError("regime must be 'sub' or 'super', got '" + s + "'");
}

GenSpec ExperimentConfig::gen_spec(std::uint64_t s) const {
  switch (family) {
    case Family::random_regular:
      return GenSpec::random_regular(n, d, s);
    case Family::hypercube:
      return GenSpec::hypercube(d);
    case Family::clique_union:
      return GenSpec::clique_union(n, d);
    case Family::blowup:
      return GenSpec::blowup(GenSpec::random_regular(base_n, base_d, s), blowup_factor);
  }
  throw ConfigError("unknown graph family");
}

double ExperimentConfig::p(std::size_t degree) const noexcept {
  if (p_override > 0.0) return p_override;
  const double base = regime == Regime::super ? 1.0 + epsilon : 1.0 - epsilon;
  return base / static_cast<double>(degree);
}

std::size_t ExperimentConfig::effective_k_max() const noexcept {
  if (k_max != 0) return k_max;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(1.0 / alpha + 1e-12)));
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, f] : fields()) k.push_back(name);
    return k;
  }();
  return keys;
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  field(key).set(cfg, key, value);
}

std::string get_config_value(const ExperimentConfig& cfg, const std::string& key) {
  return field(key).get(cfg);
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second) {
      throw ConfigError("config line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

void apply_key_values(ExperimentConfig& cfg, const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv) set_config_value(cfg, k, v);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  ExperimentConfig cfg;
  apply_key_values(cfg, parse_key_values(in));
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw ConfigError("trials must be >= 1");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  for (const auto& [metric, tol] : cfg.tolerances) {
    if (!(tol > 0.0)) throw ConfigError("tol." + metric + " must be positive");
  }
  for (double r : {cfg.rate_window, cfg.rate_L2, cfg.rate_cycle, cfg.rate_subcritical, cfg.rate_checkers}) {
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("rate thresholds must lie in [0, 1]");
  }
  if (!(cfg.p_override >= 0.0 && cfg.p_override <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  if (!(cfg.spectrum_tol > 0.0)) throw ConfigError("spectrum_tol must be positive");
  if (!(cfg.stream_c > 0.0)) throw ConfigError("stream_c must be positive");
  if (!(cfg.beta_test >= 0.0)) throw ConfigError("beta_test must be non-negative");
  for (const auto& id : cfg.checkers) {
    bool known = false;
    for (const char* k : kCheckerIds) known = known || id == k;
    if (!known) throw ConfigError("unknown checker '" + id + "'");
    if (id == "blowup_pairs" && cfg.family != Family::blowup && cfg.graph.empty()) {
      throw ConfigError("blowup_pairs needs the blowup family");
    }
  }
  if (cfg.graph.empty()) {
    try {
      ndl::validate(cfg.gen_spec());
    } catch (const SpecError& e) {
      throw ConfigError(std::string("graph: ") + e.what());
    }
  }
}

std::string dump_config(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& [k, f] : fields()) out += k + "=" + f.get(cfg) + "\n";
  return out;
}

}  // namespace ndl
