#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

#include "ndl/graph.hpp"

namespace ndl {

enum class Family { random_regular, hypercube, blowup, clique_union };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct GenSpec {
  Family family = Family::random_regular;
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  // blowup only: block size s >= 2 and the base graph spec.
  std::size_t blowup_factor = 0;
  std::shared_ptr<const GenSpec> base;

  static GenSpec random_regular(std::size_t n, std::size_t d, std::uint64_t seed);
  static GenSpec hypercube(std::size_t dim);
  static GenSpec clique_union(std::size_t n, std::size_t d);
  static GenSpec blowup(GenSpec base, std::size_t factor);
};

// Throws SpecError if the spec is infeasible.
void validate(const GenSpec& spec);

// Restart cap for the random regular sampler.
inline constexpr int kMaxRestarts = 1000;

/// Deterministic given the spec (including its seed).
///
/// random_regular: configuration (pairing) model. For d <= 4 a uniformly random
/// perfect matching of the n*d points is drawn and the whole matching is
/// rejected on any loop or multi-edge. For larger d that acceptance rate,
/// about exp(-(d^2-1)/4), is hopeless, so points are paired by repeated
/// shuffles that keep only admissible pairs (Steger–Wormald style), restarting
/// from scratch only when the leftover points cannot be completed.
/// Throws GenerationError after kMaxRestarts restarts.
///
/// blowup: base vertex b becomes block {s*b, ..., s*b+s-1}; two vertices are
/// adjacent iff their base vertices are.
RegularGraph generate(const GenSpec& spec);

/// Base-graph vertex whose independent block contains v.
/// Throws UsageError if g did not come from the blow-up generator.
vertex_t blowup_pair_index(const RegularGraph& g, vertex_t v);

}  // namespace ndl
