#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "ndl/errors.hpp"
#include "ndl/generators.hpp"
#include "ndl/percolation.hpp"
#include "ndl/spectral.hpp"
#include "ndl/verify.hpp"

using namespace ndl;
using fixtures::set_of;

TEST_CASE("mixing inequality on complete graphs") {
  const auto g = fixtures::complete(9);
  const auto rep = compute_spectrum(g);
  CHECK(rep.lambda == doctest::Approx(1.0));
  for (std::uint32_t mask = 0; mask < 512; mask += 7) {
    std::vector<vertex_t> b, c;
    for (vertex_t v = 0; v < 9; ++v) {
      if (mask >> v & 1U) b.push_back(v);
      if ((mask * 5 + 3) >> v & 1U) c.push_back(v);
    }
    CHECK(check_mixing(g, rep, set_of(9, b), set_of(9, c)).pass);
  }
  const auto empty = check_mixing(g, rep, VertexSet(9), VertexSet::full(9));
  CHECK(empty.pass);
  CHECK(empty.violation_count == 0);
  CHECK(check_mixing(g, rep, 500, 3).pass);
}

TEST_CASE("mixing violations carry re-checkable witnesses") {
  // A deliberately understated lambda makes the inequality fail.
  const auto g = generate(GenSpec::clique_union(40, 3));
  SpectrumReport fake;
  fake.lambda = 0.0;
  const auto b = set_of(40, {0, 1, 2, 3});
  const auto r = check_mixing(g, fake, b, b);
  CHECK_FALSE(r.pass);
  REQUIRE(r.violations.size() == 1);
  const double e = static_cast<double>(edge_count_between(g, b, b));
  CHECK(r.violations[0].measured == doctest::Approx(std::abs(e - 3.0 * 16 / 40)));
}

TEST_CASE("sampled mixing is reproducible") {
  const auto g = generate(GenSpec::random_regular(2000, 10, 5));
  const auto rep = compute_spectrum(g);
  const auto a = check_mixing(g, rep, 200, 17);
  const auto b = check_mixing(g, rep, 200, 17);
  CHECK(a.pass);
  CHECK(a.instances_checked == 200);
  CHECK(a.stats == b.stats);
}

TEST_CASE("degree concentration") {
  const auto g = generate(GenSpec::random_regular(2000, 10, 5));
  const auto rep = compute_spectrum(g);
  const auto all = check_degree_concentration(g, rep, VertexSet::full(2000), 0.3);
  CHECK(all.stats.at("heavy") == 0);
  CHECK(all.stats.at("light") == 0);
  CHECK(all.pass);
  std::vector<vertex_t> half(1000);
  std::iota(half.begin(), half.end(), vertex_t{0});
  const auto r = check_degree_concentration(g, rep, VertexSet::from_list(2000, half), 0.5);
  CHECK(r.stats.at("bound") == doctest::Approx(8.0 * rep.ratio * rep.ratio * 2000).epsilon(1e-3));
  CHECK(r.pass);
  half.pop_back();
  CHECK_THROWS_AS(check_degree_concentration(g, rep, VertexSet::from_list(2000, half), 0.5), PreconditionError);
  CHECK_THROWS_AS(check_degree_concentration(g, rep, VertexSet::full(2000), 0.0), DomainError);
}

TEST_CASE("expansion window sizes") {
  const auto w = expansion_window_sizes(200000, 20, 0.3);
  CHECK(w.lo == 3000);
  CHECK(w.hi == 3333);
  CHECK(expansion_window_sizes(1000, 10, 0.5).empty());
}

TEST_CASE("a full clique badly under-expands") {
  const auto g = generate(GenSpec::clique_union(2000, 19));
  std::vector<vertex_t> clique(20);
  std::iota(clique.begin(), clique.end(), vertex_t{0});
  const auto x = classify_expansion(g, clique, 0.1);
  CHECK(x.neighborhood == 0);
  CHECK(x.under());
  CHECK_FALSE(x.over());
}

TEST_CASE("expansion window checker") {
  const auto g = generate(GenSpec::random_regular(60000, 20, 1));
  const auto sample = sample_vertices(60000, 1.2 / 20, 4);
  const auto r = check_expansion_window(g, sample, 0.3, 200, 9);
  CHECK(r.pass);
  CHECK(r.instances_checked == 200);
  const auto r2 = check_expansion_window(g, sample, 0.3, 200, 9);
  CHECK(r.stats == r2.stats);
  CHECK_THROWS_AS(check_expansion_window(g, sample, 0.5, 10, 1), ConfigError);
  CHECK_THROWS_AS(check_expansion_window(g, sample_vertices(60000, 0.001, 1), 0.3, 10, 1), PreconditionError);
}

TEST_CASE("blow-up pairs reproduce the sublinear neighborhood") {
  const auto g = generate(GenSpec::blowup(GenSpec::random_regular(200, 6, 3), 2));
  const auto r = check_blowup_pairs(g, 100, 5);
  CHECK(r.pass);
  CHECK(r.instances_checked == 100);
  CHECK(r.stats.at("max_ratio") <= 1.0);
  const std::vector<vertex_t> pairs = {0, 1, 10, 11};
  std::vector<std::uint8_t> scratch(400, 0);
  CHECK(external_neighborhood_size(g, pairs, scratch) <= 4 * 12 / 2);
  CHECK_THROWS_AS(check_blowup_pairs(fixtures::petersen(), 1, 1), UsageError);
}

TEST_CASE("stream properties") {
  const std::vector<std::uint8_t> tails(200000, 0);
  CHECK(check_stream_properties(tails, 0.2, 20, StreamMode::sub).pass);
  CHECK(check_stream_properties(tails, 0.2, 20, StreamMode::super).pass);

  std::vector<std::uint8_t> burst(200000, 0);
  std::fill(burst.begin(), burst.begin() + 922 * 20, 1);
  const auto r = check_stream_properties(burst, 0.2, 20, StreamMode::sub);
  CHECK_FALSE(r.pass);
  CHECK(r.stats.at("window_k") == 922);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations[0].witness == "window start 0");

  const auto sub = realize_coins(3, 0.8 / 20, 200000);
  CHECK(check_stream_properties(sub, 0.2, 20, StreamMode::sub).pass);
  const auto super = realize_coins(3, 1.2 / 20, 200000);
  CHECK(check_stream_properties(super, 0.2, 20, StreamMode::super).pass);

  // A long run of ones drifts past eps^2 n/d.
  std::vector<std::uint8_t> front(200000, 0);
  std::fill(front.begin(), front.begin() + 19000, 1);
  const auto drift = check_stream_properties(front, 0.2, 20, StreamMode::super);
  CHECK_FALSE(drift.pass);
  CHECK(drift.stats.at("drift_bound") == doctest::Approx(400.0));
}

TEST_CASE("giant expansion checker") {
  const auto g = generate(GenSpec::random_regular(200000, 20, 1));
  CoinStream s(5, 1.2 / 20);
  const auto sample = sample_from_trace(run_dfs(g, s), 1.2 / 20, 5);
  CHECK_THROWS_AS(check_giant_expansion(g, sample, 0.2, 0.03, 10, 0.01, 1), ConfigError);
  const auto r = check_giant_expansion(g, sample, 0.2, 0.01, 50, 0.01, 7);
  CHECK(r.stats.at("window_lo") == 1600);
  CHECK(r.stats.at("min_neighborhood") > 0);
  CHECK(r.pass);
  const auto r2 = check_giant_expansion(g, sample, 0.2, 0.01, 50, 0.01, 7);
  CHECK(r.stats == r2.stats);
  CHECK_THROWS_AS(check_giant_expansion(g, sample_vertices(200000, 0.01, 1), 0.2, 0.01, 10, 0.01, 1),
                  PreconditionError);
}
