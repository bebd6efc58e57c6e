#include "ndl/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ndl/census.hpp"
#include "ndl/errors.hpp"
#include "ndl/generators.hpp"
#include "ndl/graph_io.hpp"
#include "ndl/percolation.hpp"
#include "ndl/rng.hpp"
#include "ndl/spectral.hpp"
#include "ndl/verify.hpp"

namespace ndl {

namespace {

bool has_checker(const ExperimentConfig& cfg, const std::string& id) {
  return std::find(cfg.checkers.begin(), cfg.checkers.end(), id) != cfg.checkers.end();
}

TheoryPrediction prediction_for(const ExperimentConfig& cfg, double n, double d) {
  return predict(n, d, cfg.epsilon, cfg.alpha, cfg.effective_k_max());
}

json header_record(const ExperimentConfig& cfg) {
  return {{"type", "header"}, {"format", "ndl-records"}, {"version", 1}, {"config", config_to_json(cfg)}};
}

json theory_record(const TheoryPrediction& t) {
  json j = {{"type", "theory"}};
  j.update(to_json(t));
  return j;
}

void check_sweep_config(const ExperimentConfig& cfg) {
  validate(cfg);
  if (!cfg.spectrum && (has_checker(cfg, "mixing") || has_checker(cfg, "degree_concentration"))) {
    throw ConfigError("mixing and degree_concentration checkers need spectrum = true");
  }
  if (!cfg.graph.empty() && cfg.regenerate_graph) {
    throw ConfigError("regenerate_graph cannot be combined with a graph file");
  }
  if (has_checker(cfg, "giant_expansion")) {
    if (cfg.regime != Regime::super) throw ConfigError("giant_expansion needs the super regime");
    const double x = solve_x(cfg.epsilon);
    if (!(x - 9.0 * cfg.alpha >= 16.0 * cfg.alpha)) {
      throw ConfigError("giant expansion window is empty: x - 9 alpha <= 16 alpha");
    }
  }
}

std::vector<double> column(const std::vector<json>& trials, const std::function<double(const json&)>& f) {
  std::vector<double> out;
  out.reserve(trials.size());
  for (const auto& t : trials) out.push_back(f(t));
  return out;
}

double fraction(const std::vector<json>& trials, const std::function<bool(const json&)>& f) {
  if (trials.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& t : trials) hits += f(t) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(trials.size());
}

json distribution(const std::vector<double>& v) {
  if (v.empty()) return json::object();
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  return {{"median", median(v)},
          {"q10", quantile(v, 0.1)},
          {"q90", quantile(v, 0.9)},
          {"min", *std::min_element(v.begin(), v.end())},
          {"max", *std::max_element(v.begin(), v.end())},
          {"mean", sum / static_cast<double>(v.size())}};
}

// Median compared with a prediction: pass iff within the configured relative
// tolerance and inside the theoretical window when one is given.
ComparisonRow median_row(const std::string& metric, const std::vector<double>& values, double predicted,
                         double tol, std::optional<double> lower, std::optional<double> upper) {
  ComparisonRow r;
  r.metric = metric;
  r.measured = median(values);
  r.predicted = predicted;
  r.configured_tol = tol;
  r.bound_lower = lower;
  r.bound_upper = upper;
  r.pass = std::abs(r.measured - predicted) <= tol * std::abs(predicted) &&
           (!lower || r.measured >= *lower) && (!upper || r.measured <= *upper);
  return r;
}

ComparisonRow rate_row(const std::string& metric, double measured, double rate, double required) {
  ComparisonRow r;
  r.metric = metric;
  r.measured = measured;
  r.rate = rate;
  r.required_rate = required;
  r.pass = rate >= required;
  return r;
}

std::string cell(const std::optional<double>& v) {
  if (!v) return {};
  std::ostringstream os;
  os.precision(10);
  os << *v;
  return os.str();
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::size_t index) {
  return derive_seed(master, index, Purpose::trial);
}

RegularGraph load_or_generate(const ExperimentConfig& cfg, std::optional<std::size_t> trial) {
  if (!cfg.graph.empty()) return read_graph(std::filesystem::path(cfg.graph));
  const std::uint64_t seed = trial ? derive_seed(cfg.graph_seed, *trial, Purpose::graph) : cfg.graph_seed;
  return generate(cfg.gen_spec(seed));
}

json graph_record(const ExperimentConfig& cfg, const RegularGraph& g) {
  json j = {{"type", "graph"},
            {"family", cfg.graph.empty() ? to_string(cfg.family) : std::string("file")},
            {"n", g.num_vertices()},
            {"d", g.degree()},
            {"blowup_factor", g.blowup_factor()}};
  json checks = json::object();
  if (cfg.spectrum) {
    SpectrumOptions opts;
    opts.tol = cfg.spectrum_tol;
    const SpectrumReport report = compute_spectrum(g, opts);
    j["spectrum"] = to_json(report);
    j["certificate"] = to_json(certify(report, cfg.alpha));
    if (has_checker(cfg, "mixing")) {
      checks["mixing"] = to_json(check_mixing(g, report, cfg.mixing_pairs, derive_seed(cfg.seed, 0, Purpose::checker)));
    }
    if (has_checker(cfg, "degree_concentration")) {
      ViolationReport merged;
      merged.checker = "degree_concentration";
      const std::size_t n = g.num_vertices();
      std::vector<vertex_t> ids(n);
      for (std::size_t s = 0; s < cfg.concentration_sets; ++s) {
        SplitMix64 rng(derive_seed(cfg.seed, s, Purpose::checker) ^ 0xdc);
        std::iota(ids.begin(), ids.end(), vertex_t{0});
        const std::size_t half = (n + 1) / 2;
        partial_shuffle(std::span<vertex_t>(ids), half, rng);
        const VertexSet b = VertexSet::from_list(n, std::span<const vertex_t>(ids.data(), half));
        const ViolationReport r = check_degree_concentration(g, report, b, cfg.alpha);
        merged.instances_checked += r.instances_checked;
        for (const auto& v : r.violations) merged.add(v);
        merged.stats["max_heavy"] = std::max(merged.stats["max_heavy"], r.stats.at("heavy"));
        merged.stats["max_light"] = std::max(merged.stats["max_light"], r.stats.at("light"));
        merged.stats["bound"] = r.stats.at("bound");
      }
      merged.pass = merged.violation_count == 0;
      checks["degree_concentration"] = to_json(merged);
    }
  } else {
    j["spectrum"] = nullptr;
    j["certificate"] = nullptr;
  }
  if (has_checker(cfg, "blowup_pairs")) {
    checks["blowup_pairs"] = to_json(check_blowup_pairs(g, cfg.blowup_subsets, derive_seed(cfg.seed, 1, Purpose::checker)));
  }
  j["checks"] = std::move(checks);
  return j;
}

json run_trial(const ExperimentConfig& cfg, const RegularGraph& shared, std::size_t index) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = trial_seed(cfg.seed, index);
  std::optional<RegularGraph> own;
  if (cfg.regenerate_graph) own = load_or_generate(cfg, index);
  const RegularGraph& g = own ? *own : shared;

  const double p = cfg.p(g.degree());
  if (p > 1.0) throw ConfigError("retention probability exceeds 1");
  CoinStream stream(derive_seed(seed, 0, Purpose::coins), p);
  const DfsTrace trace = run_dfs(g, stream);
  const PercolationSample sample = sample_from_trace(trace, p, seed);
  const ComponentCensus census = take_census(g, sample, cfg.effective_k_max());
  const CycleWitness witness = longest_cycle_witness(g, sample);
  const bool cycle_valid = witness.length() == 0 || validate_cycle(g, sample, witness.cycle);

  // Conservation: census and DFS describe the same partition.
  std::vector<std::size_t> epoch_sizes = trace.epoch_sizes;
  std::sort(epoch_sizes.rbegin(), epoch_sizes.rend());
  std::size_t tree_vertices = 0;
  for (std::size_t k = 1; k <= census.tree_counts.size(); ++k) tree_vertices += k * census.tree_counts[k - 1];
  const bool giant_is_small_tree =
      census.largest > 0 && census.largest <= census.k_max && census.largest_edges + 1 == census.largest;
  const std::size_t accounted =
      census.largest + tree_vertices + census.straggler_vertices - (giant_is_small_tree ? census.largest : 0);
  const std::size_t edge_sum =
      std::accumulate(census.edges_per_component.begin(), census.edges_per_component.end(), std::size_t{0});
  const bool conservation = census.retained == trace.accepted_order.size() && epoch_sizes == census.sizes &&
                            accounted == census.retained && edge_sum == census.edges_total &&
                            witness.length() == census.longest_cycle_lb;

  json checks = json::object();
  const bool super = cfg.regime == Regime::super;
  if (has_checker(cfg, "stream")) {
    checks["stream"] = to_json(check_stream_properties(trace.coins, cfg.epsilon, static_cast<double>(g.degree()),
                                                       super ? StreamMode::super : StreamMode::sub, cfg.stream_c));
  }
  if (has_checker(cfg, "expansion_window")) {
    try {
      checks["expansion_window"] = to_json(check_expansion_window(g, sample, cfg.alpha, cfg.expansion_subsets,
                                                                  derive_seed(seed, 1, Purpose::checker)));
    } catch (const PreconditionError& e) {
      checks["expansion_window"] = {{"checker", "expansion_window"}, {"pass", false}, {"error", e.what()}};
    }
  }
  if (has_checker(cfg, "giant_expansion")) {
    try {
      checks["giant_expansion"] =
          to_json(check_giant_expansion(g, sample, cfg.epsilon, cfg.alpha, cfg.giant_samples, cfg.beta_test,
                                        derive_seed(seed, 2, Purpose::checker)));
    } catch (const PreconditionError& e) {
      checks["giant_expansion"] = {{"checker", "giant_expansion"}, {"pass", false}, {"error", e.what()}};
    }
  }

  json rec = {{"type", "trial"}, {"trial", index}, {"seed", seed}, {"p", p}};
  if (own) rec["graph_seed"] = derive_seed(cfg.graph_seed, index, Purpose::graph);
  rec["dfs"] = dfs_summary(trace);
  rec["census"] = to_json(census);
  rec["cycle_valid"] = cycle_valid;
  rec["conservation"] = conservation;
  rec["checks"] = std::move(checks);
  if (cfg.timing) {
    rec["wall_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Comparison compare_trials(const ExperimentConfig& cfg, const json& graph, const std::vector<json>& trials) {
  if (trials.empty()) throw InputError("no trial records to compare");
  const double n = graph.at("n").get<double>();
  const double d = graph.at("d").get<double>();
  const TheoryPrediction t = prediction_for(cfg, n, d);

  auto census_col = [&](const char* key) {
    return column(trials, [key](const json& r) { return r.at("census").at(key).get<double>(); });
  };
  auto tree_col = [&](std::size_t k) {
    return column(trials, [k](const json& r) { return r.at("census").at("tree_counts").at(k - 1).get<double>(); });
  };
  const auto largest = census_col("largest");

  Comparison c;
  c.metrics["largest"] = distribution(largest);
  c.metrics["second"] = distribution(census_col("second"));
  c.metrics["largest_edges"] = distribution(census_col("largest_edges"));
  c.metrics["edges_total"] = distribution(census_col("edges_total"));
  c.metrics["straggler_vertices"] = distribution(census_col("straggler_vertices"));
  c.metrics["longest_cycle_lb"] = distribution(census_col("longest_cycle_lb"));
  c.metrics["retained"] = distribution(census_col("retained"));
  c.metrics["components"] = distribution(census_col("components"));

  if (cfg.regime == Regime::super) {
    const double tol7 = t.giant_size_tol;
    c.rows.push_back(median_row("giant_size", largest, t.giant_size, cfg.tolerances.at("L1"),
                                t.giant_size - tol7, t.giant_size + tol7));
    {
      ComparisonRow r = rate_row("giant_size_window", median(largest),
                                 fraction(trials, [&](const json& x) {
                                   return std::abs(x.at("census").at("largest").get<double>() - t.giant_size) <= tol7;
                                 }),
                                 cfg.rate_window);
      r.predicted = t.giant_size;
      r.bound_lower = t.giant_size - tol7;
      r.bound_upper = t.giant_size + tol7;
      c.rows.push_back(r);
    }
    {
      ComparisonRow r = rate_row("uniqueness", median(census_col("second")),
                                 fraction(trials, [&](const json& x) {
                                   return x.at("census").at("second").get<double>() <= t.straggler_bound;
                                 }),
                                 cfg.rate_L2);
      r.bound_upper = t.straggler_bound;
      c.rows.push_back(r);
    }
    {
      ComparisonRow r = rate_row("stragglers", median(census_col("straggler_vertices")),
                                 fraction(trials, [&](const json& x) {
                                   return x.at("census").at("straggler_vertices").get<double>() <= t.straggler_bound;
                                 }),
                                 cfg.rate_L2);
      r.bound_upper = t.straggler_bound;
      c.rows.push_back(r);
    }
    const std::size_t k_max = cfg.effective_k_max();
    if (k_max >= 1) {
      const auto v = tree_col(1);
      c.metrics["isolated_vertices"] = distribution(v);
      c.rows.push_back(median_row("isolated_vertices", v, t.tree_counts[0], cfg.tolerances.at("T1"),
                                  (1.0 - 4.0 * cfg.alpha) * t.tree_counts[0], std::nullopt));
    }
    if (k_max >= 2) {
      const auto v = tree_col(2);
      c.metrics["isolated_edges"] = distribution(v);
      c.rows.push_back(median_row("isolated_edges", v, t.tree_counts[1], cfg.tolerances.at("T2"),
                                  (1.0 - 4.0 * cfg.alpha) * t.tree_counts[1], std::nullopt));
    }
    {
      const double np = n * cfg.p(static_cast<std::size_t>(d));
      const double w = 2.0 * std::pow(np, 2.0 / 3.0);
      c.rows.push_back(median_row("edges_total", census_col("edges_total"), t.edges_total, cfg.tolerances.at("Zp"),
                                  t.edges_total - w, t.edges_total + w));
    }
    c.rows.push_back(median_row("giant_edges", census_col("largest_edges"), t.giant_edges,
                                cfg.tolerances.at("e_L1"), t.giant_edges - t.giant_edges_tol,
                                t.giant_edges + t.giant_edges_tol));
    {
      ComparisonRow r = rate_row("long_cycle", median(census_col("longest_cycle_lb")),
                                 fraction(trials, [&](const json& x) {
                                   return x.at("census").at("longest_cycle_lb").get<double>() >= t.cycle_bound &&
                                          x.at("cycle_valid").get<bool>();
                                 }),
                                 cfg.rate_cycle);
      r.bound_lower = t.cycle_bound;
      c.rows.push_back(r);
    }
  } else {
    {
      ComparisonRow r = rate_row("subcritical_bound", *std::max_element(largest.begin(), largest.end()),
                                 fraction(trials, [&](const json& x) {
                                   return x.at("census").at("largest").get<double>() <= t.subcritical_bound;
                                 }),
                                 cfg.rate_subcritical);
      r.bound_upper = t.subcritical_bound;
      c.rows.push_back(r);
    }
    {
      ComparisonRow r;
      r.metric = "subcritical_median";
      r.measured = median(largest);
      r.limit = cfg.sub_median_limit;
      r.pass = r.measured <= cfg.sub_median_limit;
      c.rows.push_back(r);
    }
  }

  {
    const double rate = fraction(trials, [](const json& x) { return x.at("conservation").get<bool>(); });
    c.rows.push_back(rate_row("conservation", rate, rate, 1.0));
  }

  for (const char* id : {"stream", "expansion_window", "giant_expansion"}) {
    if (!has_checker(cfg, id)) continue;
    const double rate = fraction(trials, [id](const json& x) { return x.at("checks").at(id).at("pass").get<bool>(); });
    c.rows.push_back(rate_row(std::string("check.") + id, rate, rate, cfg.rate_checkers));
  }
  if (graph.contains("checks")) {
    for (const auto& [id, rep] : graph.at("checks").items()) {
      ComparisonRow r;
      r.metric = "graph." + id;
      r.measured = rep.at("violation_count").get<double>();
      r.pass = rep.at("pass").get<bool>();
      c.rows.push_back(r);
    }
  }
  c.pass = std::all_of(c.rows.begin(), c.rows.end(), [](const ComparisonRow& r) { return r.pass; });
  return c;
}

json comparison_to_json(const Comparison& c) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json rows = json::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"metric", r.metric},
                    {"measured", r.measured},
                    {"predicted", opt(r.predicted)},
                    {"bound_lower", opt(r.bound_lower)},
                    {"bound_upper", opt(r.bound_upper)},
                    {"configured_tol", opt(r.configured_tol)},
                    {"rate", opt(r.rate)},
                    {"required_rate", opt(r.required_rate)},
                    {"limit", opt(r.limit)},
                    {"pass", r.pass}});
  }
  return {{"pass", c.pass}, {"rows", std::move(rows)}, {"metrics", c.metrics}};
}

std::string comparison_csv(const Comparison& c) {
  std::string out =
      "metric,measured,predicted,bound_lower,bound_upper,configured_tol,rate,required_rate,limit,pass\n";
  for (const auto& r : c.rows) {
    out += r.metric + "," + format_number(r.measured) + "," + cell(r.predicted) + "," + cell(r.bound_lower) + "," +
           cell(r.bound_upper) + "," + cell(r.configured_tol) + "," + cell(r.rate) + "," + cell(r.required_rate) +
           "," + cell(r.limit) + "," + (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string comparison_table(const Comparison& c) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-22s %12s %12s %12s %12s %8s %8s %8s  %s\n", "metric", "measured", "predicted",
                "bound_lo", "bound_hi", "tol", "rate", "need", "result");
  out += buf;
  auto f = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("-"); };
  for (const auto& r : c.rows) {
    std::snprintf(buf, sizeof buf, "%-22s %12s %12s %12s %12s %8s %8s %8s  %s\n", r.metric.c_str(),
                  format_number(r.measured).c_str(), f(r.predicted).c_str(), f(r.bound_lower).c_str(),
                  f(r.bound_upper).c_str(), f(r.configured_tol).c_str(), f(r.rate).c_str(),
                  f(r.required_rate ? r.required_rate : r.limit).c_str(), r.pass ? "PASS" : "FAIL");
    out += buf;
  }
  out += c.pass ? "overall: PASS\n" : "overall: FAIL\n";
  return out;
}

RecordFile read_records(const std::string& path, bool allow_incomplete) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open record file " + path);
  RecordFile f;
  std::string line;
  std::size_t lineno = 0;
  bool sentinel = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (in.eof()) {
      // Last line without a newline: a partial write.
      if (allow_incomplete) break;
      throw InputError(path + ": line " + std::to_string(lineno) + " is truncated");
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      if (allow_incomplete) break;
      throw InputError(path + ": line " + std::to_string(lineno) + " is not valid JSON");
    }
    const std::string type = j.value("type", "");
    if (lineno == 1 && type != "header") throw InputError(path + ": first record is not a header");
    if (sentinel) throw InputError(path + ": records after the sentinel");
    if (type == "header") {
      f.header = std::move(j);
    } else if (type == "graph") {
      f.graph = std::move(j);
    } else if (type == "theory") {
      f.theory = std::move(j);
    } else if (type == "trial") {
      f.trials.push_back(std::move(j));
    } else if (type == "summary") {
      f.summary = std::move(j);
    } else if (type == "sentinel") {
      sentinel = j.value("complete", false);
    } else {
      throw InputError(path + ": line " + std::to_string(lineno) + " has unknown record type '" + type + "'");
    }
  }
  if (lineno == 0) throw InputError(path + ": empty record file");
  f.complete = sentinel;
  if (!f.complete && !allow_incomplete) {
    throw InputError(path + ": incomplete record file (missing sentinel record)");
  }
  return f;
}

Comparison compare_file(const std::string& path, const std::vector<std::pair<std::string, std::string>>& overrides) {
  const RecordFile f = read_records(path);
  if (f.graph.is_null()) throw InputError(path + ": missing graph record");
  ExperimentConfig cfg = config_from_json(f.header.at("config"));
  apply_key_values(cfg, overrides);
  validate(cfg);
  return compare_trials(cfg, f.graph, f.trials);
}

std::string csv_path_for(const std::string& records_path) {
  std::filesystem::path p(records_path);
  if (p.extension() == ".csv") return records_path + ".summary.csv";
  p.replace_extension(".csv");
  return p.string();
}

SweepResult run_sweep(const ExperimentConfig& cfg, bool resume, std::ostream* log) {
  check_sweep_config(cfg);
  if (cfg.out.empty()) throw ConfigError("out must name the record file");

  const RegularGraph g = load_or_generate(cfg);
  const std::string header = header_record(cfg).dump();
  const json graph = graph_record(cfg, g);
  const std::string graph_line = graph.dump();
  const std::string theory_line =
      theory_record(prediction_for(cfg, static_cast<double>(g.num_vertices()), static_cast<double>(g.degree())))
          .dump();

  std::vector<json> trials(cfg.trials);
  std::vector<std::string> kept;
  if (resume && std::filesystem::exists(cfg.out)) {
    std::ifstream in(cfg.out, std::ios::binary);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
      if (in.eof()) break;  // unterminated tail
      lines.push_back(line);
    }
    if (lines.size() >= 3 && lines[0] == header && lines[1] == graph_line && lines[2] == theory_line) {
      for (std::size_t i = 3; i < lines.size() && kept.size() < cfg.trials; ++i) {
        json j;
        try {
          j = json::parse(lines[i]);
        } catch (const json::parse_error&) {
          break;
        }
        if (j.value("type", "") != "trial" || j.value("trial", std::size_t{0} - 1) != kept.size()) break;
        trials[kept.size()] = std::move(j);
        kept.push_back(lines[i]);
      }
    }
  }

  std::ofstream out(cfg.out, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write record file " + cfg.out);
  out << header << '\n' << graph_line << '\n' << theory_line << '\n';
  for (const auto& l : kept) out << l << '\n';
  out.flush();

  const std::size_t first = kept.size();
  const int workers = cfg.workers == 0 ? omp_get_max_threads() : static_cast<int>(cfg.workers);
  std::exception_ptr error;
  bool stopped = false;

#pragma omp parallel for ordered schedule(static, 1) num_threads(workers)
  for (std::size_t i = first; i < cfg.trials; ++i) {
    json rec;
    std::string line;
    std::exception_ptr local;
    try {
      rec = run_trial(cfg, g, i);
      line = rec.dump();
    } catch (...) {
      local = std::current_exception();
    }
#pragma omp ordered
    {
      if (!stopped) {
        if (local) {
          stopped = true;
          error = local;
        } else {
          out << line << '\n';
          out.flush();
          trials[i] = std::move(rec);
          if (log) *log << "trial " << i + 1 << "/" << cfg.trials << " done\n" << std::flush;
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
  if (!out) throw InputError("write to " + cfg.out + " failed");

  SweepResult result;
  result.comparison = compare_trials(cfg, graph, trials);
  result.trials_resumed = first;
  result.trials_run = cfg.trials - first;
  result.records_path = cfg.out;
  result.csv_path = csv_path_for(cfg.out);

  json summary = {{"type", "summary"}, {"trials", cfg.trials}};
  summary.update(comparison_to_json(result.comparison));
  out << summary.dump() << '\n';
  out << json{{"type", "sentinel"}, {"complete", true}}.dump() << '\n';
  out.flush();
  if (!out) throw InputError("write to " + cfg.out + " failed");

  std::ofstream csv(result.csv_path, std::ios::binary | std::ios::trunc);
  if (!csv) throw InputError("cannot write summary table " + result.csv_path);
  csv << comparison_csv(result.comparison);
  return result;
}

}  // namespace ndl
