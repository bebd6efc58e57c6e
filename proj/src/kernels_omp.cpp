#include <atomic>
#include <numeric>
#include <utility>

#include "ndl/kernels.hpp"
#include "ndl/rng.hpp"

namespace ndl::kernels::omp {

void spmv(const RegularGraph& g, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(g.num_vertices());
  const std::size_t d = g.degree();
  const vertex_t* adj = g.adjacency().data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    const vertex_t* row = adj + static_cast<std::size_t>(v) * d;
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) acc += x[row[j]];
    y[static_cast<std::size_t>(v)] = acc;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t n = a.size();
  const auto blocks = static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock);
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += a[i] * b[i];
    partial[static_cast<std::size_t>(blk)] = acc;
  }
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

std::vector<std::uint8_t> sample_membership(std::size_t n, double p, std::uint64_t seed) {
  std::vector<std::uint8_t> member(n);
  const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t v = 0; v < nn; ++v) {
    member[static_cast<std::size_t>(v)] =
        counter_uniform(seed, static_cast<std::uint64_t>(v)) < p ? 1 : 0;
  }
  return member;
}

namespace {

vertex_t find(std::vector<vertex_t>& parent, vertex_t v) {
  std::atomic_ref<vertex_t> pv(parent[v]);
  vertex_t p = pv.load(std::memory_order_relaxed);
  while (p != v) {
    // Path halving; racing writers only ever move a pointer closer to the root.
    const vertex_t gp = std::atomic_ref<vertex_t>(parent[p]).load(std::memory_order_relaxed);
    std::atomic_ref<vertex_t>(parent[v]).store(gp, std::memory_order_relaxed);
    v = gp;
    p = std::atomic_ref<vertex_t>(parent[v]).load(std::memory_order_relaxed);
  }
  return v;
}

void unite(std::vector<vertex_t>& parent, vertex_t a, vertex_t b) {
  while (true) {
    vertex_t ra = find(parent, a);
    vertex_t rb = find(parent, b);
    if (ra == rb) return;
    if (ra > rb) std::swap(ra, rb);
    vertex_t expected = rb;
    if (std::atomic_ref<vertex_t>(parent[rb]).compare_exchange_strong(expected, ra,
                                                                      std::memory_order_acq_rel)) {
      return;
    }
  }
}

}  // namespace

std::vector<vertex_t> label_components(const RegularGraph& g, std::span<const std::uint8_t> member) {
  const std::size_t n = g.num_vertices();
  const auto nn = static_cast<std::ptrdiff_t>(n);
  std::vector<vertex_t> parent(n);
  std::iota(parent.begin(), parent.end(), vertex_t{0});

#pragma omp parallel for schedule(dynamic, 1024)
  for (std::ptrdiff_t ui = 0; ui < nn; ++ui) {
    const auto u = static_cast<vertex_t>(ui);
    if (!member[u]) continue;
    for (vertex_t v : g.neighbors(u)) {
      if (v > u && member[v]) unite(parent, u, v);
    }
  }

  std::vector<vertex_t> labels(n, kNoLabel);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t vi = 0; vi < nn; ++vi) {
    const auto v = static_cast<vertex_t>(vi);
    if (member[v]) labels[v] = find(parent, v);
  }
  return labels;
}

}  // namespace ndl::kernels::omp
