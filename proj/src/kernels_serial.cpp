#include <numeric>
#include <utility>

#include "ndl/kernels.hpp"
#include "ndl/rng.hpp"

namespace ndl::kernels::serial {

void spmv(const RegularGraph& g, std::span<const double> x, std::span<double> y) {
  const std::size_t n = g.num_vertices();
  for (std::size_t v = 0; v < n; ++v) {
    double acc = 0.0;
    for (vertex_t u : g.neighbors(static_cast<vertex_t>(v))) acc += x[u];
    y[v] = acc;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<std::uint8_t> sample_membership(std::size_t n, double p, std::uint64_t seed) {
  std::vector<std::uint8_t> member(n);
  for (std::size_t v = 0; v < n; ++v) member[v] = counter_uniform(seed, v) < p ? 1 : 0;
  return member;
}

namespace {

vertex_t find(std::vector<vertex_t>& parent, vertex_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

std::vector<vertex_t> label_components(const RegularGraph& g, std::span<const std::uint8_t> member) {
  const std::size_t n = g.num_vertices();
  std::vector<vertex_t> parent(n);
  std::iota(parent.begin(), parent.end(), vertex_t{0});
  for (std::size_t u = 0; u < n; ++u) {
    if (!member[u]) continue;
    for (vertex_t v : g.neighbors(static_cast<vertex_t>(u))) {
      if (v <= u || !member[v]) continue;
      vertex_t ru = find(parent, static_cast<vertex_t>(u));
      vertex_t rv = find(parent, v);
      if (ru == rv) continue;
      if (ru > rv) std::swap(ru, rv);
      parent[rv] = ru;
    }
  }
  std::vector<vertex_t> labels(n, kNoLabel);
  for (std::size_t v = 0; v < n; ++v) {
    if (member[v]) labels[v] = find(parent, static_cast<vertex_t>(v));
  }
  return labels;
}

}  // namespace ndl::kernels::serial
