#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ndl/config.hpp"
#include "ndl/graph.hpp"
#include "ndl/serialize.hpp"
#include "ndl/theory.hpp"

namespace ndl {

/// Graph used by trial `index` (the shared graph unless regenerate_graph).
RegularGraph load_or_generate(const ExperimentConfig& cfg, std::optional<std::size_t> trial = std::nullopt);

/// Per-trial seed: a counter-based mix of (master seed, trial index).
std::uint64_t trial_seed(std::uint64_t master, std::size_t index);

/// Graph-level record: shape, spectrum and certificate, graph-wide checkers.
json graph_record(const ExperimentConfig& cfg, const RegularGraph& g);

/// One trial: DFS on a fresh coin stream, census, cycle witness, configured
/// per-trial checkers, conservation checks. Pure in (cfg, g, index).
json run_trial(const ExperimentConfig& cfg, const RegularGraph& g, std::size_t index);

/// One row of a theory-versus-measurement comparison.
struct ComparisonRow {
  std::string metric;
  double measured = 0.0;                // median over trials (or a graph-level value)
  std::optional<double> predicted;
  std::optional<double> bound_lower;    // window implied by the theoretical error term
  std::optional<double> bound_upper;
  std::optional<double> configured_tol; // relative to predicted
  std::optional<double> rate;           // fraction of trials satisfying the per-trial test
  std::optional<double> required_rate;
  std::optional<double> limit;          // configured absolute cap on the measured value
  bool pass = false;
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  json metrics;  // per-metric distribution summaries
  bool pass = false;
};

/// Median (midpoint of the two middle values for even counts).
double median(std::vector<double> values);
/// Linear-interpolation quantile, q in [0, 1].
double quantile(std::vector<double> values, double q);

Comparison compare_trials(const ExperimentConfig& cfg, const json& graph, const std::vector<json>& trials);

json comparison_to_json(const Comparison& c);
std::string comparison_csv(const Comparison& c);
std::string comparison_table(const Comparison& c);

/// Parsed record file. `complete` is true iff the sentinel record is present.
struct RecordFile {
  json header;
  json graph;
  json theory;
  std::vector<json> trials;
  std::optional<json> summary;
  bool complete = false;
};

/// Throws InputError on unreadable or malformed content. Without
/// `allow_incomplete` a missing sentinel is an error.
RecordFile read_records(const std::string& path, bool allow_incomplete = false);

/// Recomputes the comparison from a complete record file, with optional
/// configuration overrides (tolerances, rates) applied on top of the stored
/// configuration.
Comparison compare_file(const std::string& path,
                        const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Path of the CSV summary written next to a record file.
std::string csv_path_for(const std::string& records_path);

struct SweepResult {
  Comparison comparison;
  std::size_t trials_run = 0;
  std::size_t trials_resumed = 0;
  std::string records_path;
  std::string csv_path;
};

/// Runs the configured sweep and writes header, graph, theory, one line per
/// trial in index order, summary and sentinel. With `resume`, a record file
/// whose header and graph lines match is kept up to its last intact trial and
/// the sweep continues from there; otherwise the file is rewritten.
SweepResult run_sweep(const ExperimentConfig& cfg, bool resume = false, std::ostream* log = nullptr);

}  // namespace ndl
