#include "ndl/census.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "ndl/errors.hpp"

namespace ndl {

namespace {

void check_sample(const RegularGraph& g, const PercolationSample& sample) {
  if (sample.membership.universe() != g.num_vertices()) {
    throw InputError("sample universe does not match graph order");
  }
}

}  // namespace

ComponentCensus take_census(const RegularGraph& g, const PercolationSample& sample, std::size_t k_max) {
  if (k_max == 0) throw InputError("k_max must be >= 1");
  check_sample(g, sample);
  const ComponentLabeling labels = components_oracle(g, sample);
  const std::size_t c = labels.count();

  std::vector<std::size_t> edges(c, 0);
  sample.membership.for_each([&](vertex_t u) {
    for (vertex_t v : g.neighbors(u)) {
      if (v > u && sample.membership.contains(v)) ++edges[labels.component_of[u]];
    }
  });

  std::vector<std::size_t> order(c);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return labels.sizes[a] > labels.sizes[b]; });

  ComponentCensus census;
  census.retained = sample.retained_count();
  census.k_max = k_max;
  census.tree_counts.assign(k_max, 0);
  census.sizes.reserve(c);
  census.edges_per_component.reserve(c);
  for (std::size_t id : order) {
    census.sizes.push_back(labels.sizes[id]);
    census.edges_per_component.push_back(edges[id]);
  }
  census.edges_total = std::accumulate(edges.begin(), edges.end(), std::size_t{0});
  if (c > 0) {
    census.largest = census.sizes[0];
    census.largest_edges = census.edges_per_component[0];
  }
  if (c > 1) census.second = census.sizes[1];

  for (std::size_t i = 0; i < c; ++i) {
    const std::size_t size = census.sizes[i];
    const std::size_t e = census.edges_per_component[i];
    const bool small_tree = e + 1 == size && size <= k_max;
    if (small_tree) ++census.tree_counts[size - 1];
    if (i > 0 && !small_tree) {
      census.straggler_vertices += size;
      census.straggler_edges += e;
    }
  }
  census.longest_cycle_lb = longest_cycle_lower_bound(g, sample);
  return census;
}

CycleWitness longest_cycle_witness(const RegularGraph& g, const PercolationSample& sample) {
  check_sample(g, sample);
  const std::size_t n = g.num_vertices();
  const std::size_t d = g.degree();
  constexpr vertex_t kNone = kRejected;
  enum : std::uint8_t { kUnseen, kOnStack, kDone };
  std::vector<std::uint8_t> state(n, kUnseen);
  std::vector<vertex_t> parent(n, kNone);
  std::vector<std::uint32_t> depth(n, 0);
  std::vector<std::uint32_t> cursor(n, 0);
  std::vector<vertex_t> stack;

  std::size_t best = 0;
  vertex_t best_low = kNone;
  vertex_t best_high = kNone;

  sample.membership.for_each([&](vertex_t root) {
    if (state[root] != kUnseen) return;
    state[root] = kOnStack;
    stack.push_back(root);
    while (!stack.empty()) {
      const vertex_t u = stack.back();
      auto nb = g.neighbors(u);
      if (cursor[u] == d) {
        state[u] = kDone;
        stack.pop_back();
        continue;
      }
      const vertex_t w = nb[cursor[u]++];
      if (!sample.membership.contains(w) || w == parent[u]) continue;
      if (state[w] == kUnseen) {
        state[w] = kOnStack;
        parent[w] = u;
        depth[w] = depth[u] + 1;
        stack.push_back(w);
      } else if (state[w] == kOnStack) {
        const std::size_t len = depth[u] - depth[w] + 1;
        if (len > best) {
          best = len;
          best_low = u;
          best_high = w;
        }
      }
    }
  });

  CycleWitness witness;
  if (best == 0) return witness;
  for (vertex_t v = best_low; v != best_high; v = parent[v]) witness.cycle.push_back(v);
  witness.cycle.push_back(best_high);
  std::reverse(witness.cycle.begin(), witness.cycle.end());
  return witness;
}

std::size_t longest_cycle_lower_bound(const RegularGraph& g, const PercolationSample& sample) {
  return longest_cycle_witness(g, sample).length();
}

bool validate_cycle(const RegularGraph& g, const PercolationSample& sample,
                    std::span<const vertex_t> cycle) {
  if (cycle.size() < 3) return false;
  std::vector<vertex_t> sorted(cycle.begin(), cycle.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const vertex_t a = cycle[i];
    const vertex_t b = cycle[(i + 1) % cycle.size()];
    if (a >= g.num_vertices() || !sample.membership.contains(a)) return false;
    if (!g.has_edge(a, b)) return false;
  }
  return true;
}

namespace {

using EdgeSet = std::vector<std::uint32_t>;  // sorted edge indices

// Edge index of (u, v) in the flat adjacency: u*d + position of v.
std::uint32_t edge_index(const RegularGraph& g, vertex_t u, vertex_t v) {
  if (u > v) std::swap(u, v);
  auto nb = g.neighbors(u);
  const auto pos = std::lower_bound(nb.begin(), nb.end(), v) - nb.begin();
  return static_cast<std::uint32_t>(u * g.degree() + static_cast<std::size_t>(pos));
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return static_cast<std::uint64_t>(std::llround(r));
}

// Enumerates connected k-vertex sets once each (ESU: extensions only through
// exclusive neighbors larger than the root).
template <class F>
void for_each_connected_kset(const RegularGraph& g, std::size_t k, F&& emit) {
  const std::size_t n = g.num_vertices();
  std::vector<vertex_t> sub;
  std::vector<std::uint8_t> in_sub(n, 0);
  std::vector<std::uint32_t> touched(n, 0);  // number of sub vertices adjacent to v

  auto recurse = [&](auto&& self, std::vector<vertex_t> ext, vertex_t root) -> void {
    if (sub.size() == k) {
      emit(std::span<const vertex_t>(sub));
      return;
    }
    while (!ext.empty()) {
      const vertex_t w = ext.back();
      ext.pop_back();
      std::vector<vertex_t> next = ext;
      for (vertex_t u : g.neighbors(w)) {
        if (u > root && !in_sub[u] && touched[u] == 0) {
          next.push_back(u);
        }
      }
      sub.push_back(w);
      in_sub[w] = 1;
      for (vertex_t u : g.neighbors(w)) ++touched[u];
      self(self, std::move(next), root);
      for (vertex_t u : g.neighbors(w)) --touched[u];
      in_sub[w] = 0;
      sub.pop_back();
    }
  };

  for (std::size_t r = 0; r < n; ++r) {
    const auto root = static_cast<vertex_t>(r);
    sub.assign(1, root);
    in_sub[root] = 1;
    for (vertex_t u : g.neighbors(root)) ++touched[u];
    std::vector<vertex_t> ext;
    for (vertex_t u : g.neighbors(root)) {
      if (u > root) ext.push_back(u);
    }
    recurse(recurse, std::move(ext), root);
    for (vertex_t u : g.neighbors(root)) --touched[u];
    in_sub[root] = 0;
  }
}

std::size_t induced_edges(const RegularGraph& g, std::span<const vertex_t> set) {
  std::size_t e = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) e += g.has_edge(set[i], set[j]) ? 1 : 0;
  }
  return e;
}

bool induced_connected(const RegularGraph& g, std::span<const vertex_t> set) {
  if (set.empty()) return false;
  std::vector<std::uint8_t> seen(set.size(), 0);
  std::vector<std::size_t> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (!seen[j] && g.has_edge(set[queue[head]], set[j])) {
        seen[j] = 1;
        queue.push_back(j);
      }
    }
  }
  return queue.size() == set.size();
}

}  // namespace

std::uint64_t count_trees_bruteforce(const RegularGraph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (k == 0) throw InputError("tree order k must be >= 1");
  if (n > 64 && k > 4) throw ScaleError("tree enumeration needs n <= 64 or k <= 4");
  if (k > n) return 0;
  if (k == 1) return n;

  // Grow edge sets from each root r, only through vertices > r, so every
  // tree is generated from its smallest vertex; de-duplicate per level.
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const auto root = static_cast<vertex_t>(r);
    std::set<EdgeSet> level{EdgeSet{}};
    for (std::size_t size = 1; size < k; ++size) {
      std::set<EdgeSet> grown;
      for (const EdgeSet& tree : level) {
        std::vector<vertex_t> verts{root};
        for (std::uint32_t e : tree) {
          const auto u = static_cast<vertex_t>(e / g.degree());
          const vertex_t v = g.adjacency()[e];
          verts.push_back(u);
          verts.push_back(v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        for (vertex_t u : verts) {
          for (vertex_t v : g.neighbors(u)) {
            if (v <= root || std::binary_search(verts.begin(), verts.end(), v)) continue;
            EdgeSet next = tree;
            next.insert(std::lower_bound(next.begin(), next.end(), edge_index(g, u, v)),
                        edge_index(g, u, v));
            grown.insert(std::move(next));
          }
        }
      }
      level.swap(grown);
    }
    total += level.size();
  }
  return total;
}

namespace {

// n * k^(k-2) * base^(k-1) / k!, by exact products while they fit.
double tree_formula(std::size_t n, std::size_t base, std::size_t k) {
  const double kk = static_cast<double>(k);
  if (k <= 12) {
    long double v = static_cast<long double>(n);
    for (std::size_t i = 1; i < k; ++i) v *= static_cast<long double>(base);
    for (std::size_t i = 2; i < k; ++i) v *= static_cast<long double>(k);
    for (std::size_t i = 2; i <= k; ++i) v /= static_cast<long double>(i);
    return static_cast<double>(v);
  }
  return std::exp(std::log(static_cast<double>(n)) + (kk - 2.0) * std::log(kk) +
                  (kk - 1.0) * std::log(static_cast<double>(base)) - std::lgamma(kk + 1.0));
}

}  // namespace

double tree_count_lower_bound(std::size_t n, std::size_t d, std::size_t k) {
  if (k == 0 || k >= d) return 0.0;
  return tree_formula(n, d - k, k);
}

std::uint64_t count_triangles(const RegularGraph& g) {
  std::uint64_t t = 0;
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    auto nu = g.neighbors(static_cast<vertex_t>(u));
    for (vertex_t v : nu) {
      if (v <= u) continue;
      auto nv = g.neighbors(v);
      // Common neighbors w > v.
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++t;
          ++a;
          ++b;
        }
      }
    }
  }
  return t;
}

std::uint64_t count_acyclic_connected_ksets(const RegularGraph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  const std::size_t d = g.degree();
  if (k == 0) throw InputError("set size k must be >= 1");
  if (k > n) return 0;
  if (k == 1) return n;
  if (k == 2) return n * d / 2;
  if (k == 3) return static_cast<std::uint64_t>(n) * (d * (d - 1) / 2) - 3 * count_triangles(g);
  if (k == 4) {
    std::uint64_t count = 0;
    for_each_connected_kset(g, k, [&](std::span<const vertex_t> set) {
      if (induced_edges(g, set) == k - 1) ++count;
    });
    return count;
  }
  if (n > 64 || binomial(n, k) > 50'000'000ULL) {
    throw ScaleError("acyclic k-set count needs k <= 4 or a small subset space (n <= 64)");
  }
  // Exhaustive walk over all k-subsets in lexicographic order.
  std::uint64_t count = 0;
  std::vector<vertex_t> set(k);
  std::iota(set.begin(), set.end(), vertex_t{0});
  while (true) {
    if (induced_edges(g, set) == k - 1 && induced_connected(g, set)) ++count;
    std::size_t i = k;
    while (i > 0 && set[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++set[i - 1];
    for (std::size_t j = i; j < k; ++j) set[j] = set[j - 1] + 1;
  }
  return count;
}

double acyclic_kset_lower_bound(std::size_t n, std::size_t d, std::size_t k, double alpha) {
  if (k == 0) return 0.0;
  return (1.0 - alpha) * tree_formula(n, d, k);
}

}  // namespace ndl
