#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ndl/graph.hpp"
#include "ndl/percolation.hpp"

namespace ndl {

/// Component statistics of G[V_p].
struct ComponentCensus {
  std::size_t retained = 0;
  std::vector<std::size_t> sizes;               // descending
  std::vector<std::size_t> edges_per_component; // aligned with sizes
  std::size_t largest = 0;                      // |L1|
  std::size_t second = 0;                       // |L2|
  std::size_t largest_edges = 0;                // e(L1)
  std::size_t edges_total = 0;                  // Z_p
  std::size_t k_max = 0;
  std::vector<std::size_t> tree_counts;         // tree_counts[k-1] = T_k, k = 1..k_max
  // Retained vertices (and their induced edges) that are neither in L1 nor in
  // a tree component of order <= k_max.
  std::size_t straggler_vertices = 0;
  std::size_t straggler_edges = 0;
  std::size_t longest_cycle_lb = 0;

  std::size_t components() const noexcept { return sizes.size(); }
};

/// Throws InputError if k_max == 0 or the sample does not match g.
ComponentCensus take_census(const RegularGraph& g, const PercolationSample& sample, std::size_t k_max);

/// A cycle of G[V_p] as a vertex sequence (closing edge back to the front implied).
struct CycleWitness {
  std::vector<vertex_t> cycle;
  std::size_t length() const noexcept { return cycle.size(); }
};

/// Longest cycle closed by a single back edge of a DFS forest on G[V_p]:
/// for back edge (u, a) with a an ancestor of u the cycle is the tree path
/// a..u plus the edge. A lower bound on the circumference; empty if acyclic.
CycleWitness longest_cycle_witness(const RegularGraph& g, const PercolationSample& sample);
std::size_t longest_cycle_lower_bound(const RegularGraph& g, const PercolationSample& sample);

/// Distinct retained vertices, consecutive ones adjacent, last adjacent to
/// first, length >= 3.
bool validate_cycle(const RegularGraph& g, const PercolationSample& sample,
                    std::span<const vertex_t> cycle);

/// Number of subtrees of g with k vertices, counting distinct edge sets.
/// Requires n <= 64 or k <= 4 (ScaleError otherwise).
std::uint64_t count_trees_bruteforce(const RegularGraph& g, std::size_t k);

/// n * k^(k-2) * (d-k)^(k-1) / k!, the guaranteed minimum for k < d.
double tree_count_lower_bound(std::size_t n, std::size_t d, std::size_t k);

/// Number of k-vertex sets whose induced subgraph is a tree. Closed forms for
/// k <= 3, local enumeration for k = 4, exhaustive subsets for n <= 64.
std::uint64_t count_acyclic_connected_ksets(const RegularGraph& g, std::size_t k);

/// (1 - alpha) * n * k^(k-2) * d^(k-1) / k!.
double acyclic_kset_lower_bound(std::size_t n, std::size_t d, std::size_t k, double alpha);

/// Triangles of g (each counted once).
std::uint64_t count_triangles(const RegularGraph& g);

}  // namespace ndl
