#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ndl/graph.hpp"
#include "ndl/kernels.hpp"

namespace ndl {

/// Retained vertex set V_p.
struct PercolationSample {
  double p = 0.0;
  std::uint64_t seed = 0;
  VertexSet membership;

  std::size_t retained_count() const noexcept { return membership.size(); }
  std::vector<std::uint8_t> member_bytes() const;
};

/// Each vertex kept independently with probability p; vertex v's fate depends
/// only on (seed, v). Throws DomainError unless 0 <= p <= 1.
PercolationSample sample_vertices(std::size_t n, double p, std::uint64_t seed);

/// Bernoulli(p) coin stream. Draw i is a pure function of (seed, i); a
/// scripted stream replays a fixed sequence and runs dry after it.
class CoinStream {
 public:
  CoinStream(std::uint64_t seed, double p);
  static CoinStream scripted(std::vector<std::uint8_t> coins);

  bool draw();
  std::size_t consumed() const noexcept { return consumed_; }
  double p() const noexcept { return p_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  CoinStream() = default;
  std::uint64_t seed_ = 0;
  double p_ = 0.0;
  std::size_t consumed_ = 0;
  bool scripted_ = false;
  std::vector<std::uint8_t> script_;
};

/// The first n draws of a seeded stream, as 0/1 values.
std::vector<std::uint8_t> realize_coins(std::uint64_t seed, double p, std::size_t n);

inline constexpr vertex_t kRejected = kernels::kNoLabel;

struct DfsTrace {
  std::vector<std::size_t> epoch_starts;      // coin index that opened each epoch
  std::vector<vertex_t> component_of;         // epoch id per vertex, or kRejected
  std::vector<vertex_t> accepted_order;       // vertices in acceptance order
  std::vector<std::size_t> queries_per_epoch; // coins drawn while each epoch was open
  std::vector<std::size_t> epoch_sizes;
  std::vector<std::uint8_t> coins;            // realized coins in draw order
  std::size_t final_s = 0;
  std::size_t final_w = 0;
  std::size_t coins_consumed = 0;

  std::size_t epochs() const noexcept { return epoch_starts.size(); }
  std::size_t largest_epoch() const noexcept;
  VertexSet accepted_set() const;
};

struct DfsOptions {
  // Vertex priority: priority[i] is the i-th vertex in scanning order. Empty
  // means identity.
  std::span<const vertex_t> priority;
  // Assert N(S) ⊆ W at every epoch boundary (costly; for tests).
  bool check_frontier = false;
};

/// Depth-first exploration of G[V_p] driven by a coin stream.
///
/// Sets: S (explored), T (untouched), U (stack), W (rejected). While U is
/// non-empty, the top of U looks for its first neighbor in T in priority
/// order; that neighbor gets one coin (heads: push on U, tails: into W). A top
/// with no T-neighbor moves to S. When U is empty the first T-vertex in
/// priority order gets a coin; heads opens a new epoch. Every vertex receives
/// exactly one coin, so exactly n coins are drawn.
DfsTrace run_dfs(const RegularGraph& g, CoinStream& stream, const DfsOptions& options = {});

/// Sample whose membership is the DFS accepted set.
PercolationSample sample_from_trace(const DfsTrace& trace, double p, std::uint64_t seed);

struct ComponentLabeling {
  std::vector<vertex_t> component_of;  // dense id ordered by smallest member, or kRejected
  std::vector<std::size_t> sizes;
  std::size_t count() const noexcept { return sizes.size(); }
};

/// Union-find over edges with both ends retained.
ComponentLabeling components_oracle(const RegularGraph& g, const PercolationSample& sample);

/// Relabels a vertex -> component map so ids follow first appearance by
/// vertex id. Two labelings describe the same partition iff their canonical
/// forms are equal.
std::vector<vertex_t> canonical_partition(std::span<const vertex_t> component_of);

}  // namespace ndl
