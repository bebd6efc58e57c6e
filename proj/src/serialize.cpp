#include "ndl/serialize.hpp"

#include "ndl/errors.hpp"

namespace ndl {

json to_json(const SpectrumReport& r) {
  return {{"lambda1", r.lambda1},     {"lambda2", r.lambda2},       {"lambdaN", r.lambdaN},
          {"lambda", r.lambda},       {"ratio", r.ratio},           {"residual2", r.residual2},
          {"residualN", r.residualN}, {"iterations", r.iterations}, {"method", to_string(r.method)},
          {"connected", r.connected}};
}

json to_json(const Certificate& c) {
  return {{"alpha", c.alpha}, {"threshold", c.threshold}, {"admissible", c.admissible}};
}

json to_json(const ViolationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"witness", x.witness}, {"measured", x.measured}, {"bound", x.bound}});
  }
  json stats = json::object();
  for (const auto& [k, x] : r.stats) stats[k] = x;
  return {{"checker", r.checker},
          {"pass", r.pass},
          {"instances", r.instances_checked},
          {"skipped", r.instances_skipped},
          {"violation_count", r.violation_count},
          {"stats", std::move(stats)},
          {"violations", std::move(v)}};
}

json to_json(const ComponentCensus& c) {
  return {{"retained", c.retained},
          {"components", c.components()},
          {"largest", c.largest},
          {"second", c.second},
          {"largest_edges", c.largest_edges},
          {"edges_total", c.edges_total},
          {"k_max", c.k_max},
          {"tree_counts", c.tree_counts},
          {"straggler_vertices", c.straggler_vertices},
          {"straggler_edges", c.straggler_edges},
          {"longest_cycle_lb", c.longest_cycle_lb}};
}

json to_json(const TheoryPrediction& t) {
  return {{"n", t.n},
          {"d", t.d},
          {"epsilon", t.epsilon},
          {"alpha", t.alpha},
          {"x", t.x},
          {"y", t.y},
          {"giant_size", t.giant_size},
          {"giant_size_tol", t.giant_size_tol},
          {"giant_edges", t.giant_edges},
          {"giant_edges_tol", t.giant_edges_tol},
          {"edges_total", t.edges_total},
          {"small_tree_edges", t.small_tree_edges},
          {"subcritical_bound", t.subcritical_bound},
          {"straggler_bound", t.straggler_bound},
          {"cycle_bound", t.cycle_bound},
          {"giant_threshold", t.giant_threshold},
          {"expansion_min_size", t.expansion_min_size},
          {"expansion_max_size", t.expansion_max_size},
          {"tree_counts", t.tree_counts},
          {"admissible",
           {{"giant_size", t.admissible.giant_size},
            {"uniqueness", t.admissible.uniqueness},
            {"giant_edges", t.admissible.giant_edges},
            {"long_cycle", t.admissible.long_cycle},
            {"giant_expansion", t.admissible.giant_expansion}}}};
}

json to_json(const SeriesResult& s) {
  return {{"value", s.value}, {"error_bound", s.error_bound}, {"terms", s.terms}};
}

json dfs_summary(const DfsTrace& t) {
  std::size_t max_queries = 0;
  for (auto q : t.queries_per_epoch) max_queries = std::max(max_queries, q);
  return {{"epochs", t.epochs()},
          {"largest_epoch", t.largest_epoch()},
          {"accepted", t.accepted_order.size()},
          {"coins", t.coins_consumed},
          {"final_s", t.final_s},
          {"final_w", t.final_w},
          {"max_epoch_queries", max_queries}};
}

json config_to_json(const ExperimentConfig& cfg) {
  json j = json::object();
  for (const auto& key : config_keys()) {
    if (key == "workers" || key == "out") continue;
    j[key] = get_config_value(cfg, key);
  }
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config record must be an object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw ConfigError("config value for '" + key + "' must be a string");
    set_config_value(cfg, key, value.get<std::string>());
  }
  return cfg;
}

}  // namespace ndl
