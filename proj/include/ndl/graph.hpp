#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ndl {

using vertex_t = std::uint32_t;
using Edge = std::pair<vertex_t, vertex_t>;

/// Immutable simple d-regular graph in compressed (CSR) adjacency form.
///
/// Vertices are 0..n-1. Every neighbor list has exactly d entries, is sorted
/// ascending, contains no duplicates and no self-loop, and adjacency is
/// symmetric. Construction validates all of this, so any RegularGraph in hand
/// satisfies the invariants. Safe to share read-only across threads.
class RegularGraph {
 public:
  /// Builds from an undirected edge list (each edge once, either orientation).
  /// Throws RegularityError naming the first vertex that breaks regularity or
  /// simplicity, InputError on out-of-range ids.
  static RegularGraph from_edges(std::size_t n, std::size_t d, std::span<const Edge> edges);

  /// Builds from a flat n*d adjacency array. Lists need not be sorted.
  static RegularGraph from_adjacency(std::size_t n, std::size_t d, std::vector<vertex_t> neighbors);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t degree() const noexcept { return d_; }
  std::size_t num_edges() const noexcept { return n_ * d_ / 2; }

  std::span<const vertex_t> neighbors(vertex_t v) const noexcept {
    return {neighbors_.data() + offsets_[v], d_};
  }
  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const vertex_t> adjacency() const noexcept { return neighbors_; }

  /// O(log d) membership test on the sorted neighbor list.
  bool has_edge(vertex_t u, vertex_t v) const;

  /// Undirected edges (u < v) in lexicographic order.
  std::vector<Edge> edges() const;

  /// Block size s if this graph came out of the blow-up generator, 0 otherwise.
  std::size_t blowup_factor() const noexcept { return blowup_factor_; }
  RegularGraph with_blowup_factor(std::size_t s) const;

  /// Structural equality (ignores the blow-up tag).
  bool operator==(const RegularGraph& other) const noexcept {
    return n_ == other.n_ && d_ == other.d_ && neighbors_ == other.neighbors_;
  }

 private:
  RegularGraph(std::size_t n, std::size_t d, std::vector<vertex_t> neighbors);

  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<vertex_t> neighbors_;
  std::size_t blowup_factor_ = 0;
};

/// Bitmap over 0..n-1 with a cached cardinality.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VertexSet full(std::size_t universe);
  static VertexSet from_list(std::size_t universe, std::span<const vertex_t> members);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(vertex_t v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void insert(vertex_t v);
  void erase(vertex_t v);

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::vector<vertex_t> to_vector() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        f(static_cast<vertex_t>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const VertexSet& other) const noexcept {
    return universe_ == other.universe_ && words_ == other.words_;
  }

 private:
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// |N(v) ∩ B|.
std::size_t degree_into(const RegularGraph& g, vertex_t v, const VertexSet& b);

/// Number of ordered pairs (u, v) with u in B, v in C and uv an edge. An edge
/// with both ends in B ∩ C is counted twice, so e(V, V) = n*d.
std::size_t edge_count_between(const RegularGraph& g, const VertexSet& b, const VertexSet& c);

/// {v not in S : v adjacent to some u in S}.
VertexSet external_neighborhood(const RegularGraph& g, const VertexSet& s);

/// Size of the external neighborhood of an explicit vertex list, without
/// materializing a VertexSet. `scratch` must hold n entries and is left zeroed.
std::size_t external_neighborhood_size(const RegularGraph& g, std::span<const vertex_t> s,
                                       std::vector<std::uint8_t>& scratch);

}  // namespace ndl
