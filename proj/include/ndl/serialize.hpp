#pragma once

#include "json.hpp"

#include "ndl/census.hpp"
#include "ndl/config.hpp"
#include "ndl/percolation.hpp"
#include "ndl/spectral.hpp"
#include "ndl/theory.hpp"
#include "ndl/verify.hpp"

namespace ndl {

using json = nlohmann::ordered_json;

json to_json(const SpectrumReport& r);
json to_json(const Certificate& c);
json to_json(const ViolationReport& r);
json to_json(const ComponentCensus& c);
json to_json(const TheoryPrediction& t);
json to_json(const SeriesResult& s);
json dfs_summary(const DfsTrace& t);

/// Every configuration key as a string value, in canonical order. Keys that
/// only affect how a run executes (workers, out) are left out so records do
/// not depend on them.
json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const json& j);

}  // namespace ndl
