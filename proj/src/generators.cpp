#include "ndl/generators.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "ndl/errors.hpp"
#include "ndl/rng.hpp"

namespace ndl {

std::string to_string(Family f) {
  switch (f) {
    case Family::random_regular: return "random_regular";
    case Family::hypercube: return "hypercube";
    case Family::blowup: return "blowup";
    case Family::clique_union: return "clique_union";
  }
  return "unknown";
}

Family family_from_string(const std::string& s) {
  if (s == "random_regular") return Family::random_regular;
  if (s == "hypercube") return Family::hypercube;
  if (s == "blowup") return Family::blowup;
  if (s == "clique_union") return Family::clique_union;
  throw SpecError("unknown graph family '" + s + "'");
}

GenSpec GenSpec::random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  GenSpec s;
  s.family = Family::random_regular;
  s.n = n;
  s.d = d;
  s.seed = seed;
  return s;
}

GenSpec GenSpec::hypercube(std::size_t dim) {
  GenSpec s;
  s.family = Family::hypercube;
  s.d = dim;
  s.n = dim < 63 ? std::size_t{1} << dim : 0;
  return s;
}

GenSpec GenSpec::clique_union(std::size_t n, std::size_t d) {
  GenSpec s;
  s.family = Family::clique_union;
  s.n = n;
  s.d = d;
  return s;
}

GenSpec GenSpec::blowup(GenSpec base, std::size_t factor) {
  GenSpec s;
  s.family = Family::blowup;
  s.blowup_factor = factor;
  s.n = base.n * factor;
  s.d = base.d * factor;
  s.seed = base.seed;
  s.base = std::make_shared<const GenSpec>(std::move(base));
  return s;
}

void validate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::random_regular:
      if (spec.d == 0 || spec.d >= spec.n) throw SpecError("random_regular needs 1 <= d < n");
      if ((spec.n * spec.d) % 2 != 0) throw SpecError("random_regular needs n*d even");
      break;
    case Family::hypercube:
      if (spec.d == 0 || spec.d > 30) throw SpecError("hypercube dimension must be in [1, 30]");
      if (spec.n != (std::size_t{1} << spec.d)) throw SpecError("hypercube needs n = 2^d");
      break;
    case Family::clique_union:
      if (spec.d == 0 || spec.n == 0) throw SpecError("clique_union needs n, d >= 1");
      if (spec.n % (spec.d + 1) != 0) throw SpecError("clique_union needs (d+1) | n");
      break;
    case Family::blowup:
      if (!spec.base) throw SpecError("blowup needs a base spec");
      if (spec.base->family == Family::blowup) throw SpecError("nested blow-ups are not supported");
      if (spec.blowup_factor < 2) throw SpecError("blowup factor must be >= 2");
      validate(*spec.base);
      if (spec.n != spec.base->n * spec.blowup_factor ||
          spec.d != spec.base->d * spec.blowup_factor) {
        throw SpecError("blowup needs n = s*n0 and d = s*d0");
      }
      break;
  }
}

namespace {

bool adjacent(const std::vector<std::vector<vertex_t>>& adj, vertex_t u, vertex_t v) {
  const auto& a = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
  const vertex_t other = adj[u].size() <= adj[v].size() ? v : u;
  return std::find(a.begin(), a.end(), other) != a.end();
}

std::vector<vertex_t> make_points(std::size_t n, std::size_t d) {
  std::vector<vertex_t> points;
  points.reserve(n * d);
  for (std::size_t v = 0; v < n; ++v) points.insert(points.end(), d, static_cast<vertex_t>(v));
  return points;
}

// One uniformly random perfect matching of the points; nullopt on a loop or
// multi-edge.
std::optional<std::vector<Edge>> pairing_attempt(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  auto points = make_points(n, d);
  std::shuffle(points.begin(), points.end(), rng);
  std::vector<std::vector<vertex_t>> adj(n);
  std::vector<Edge> edges;
  edges.reserve(n * d / 2);
  for (std::size_t i = 0; i < points.size(); i += 2) {
    const vertex_t u = points[i];
    const vertex_t v = points[i + 1];
    if (u == v || adjacent(adj, u, v)) return std::nullopt;
    adj[u].push_back(v);
    adj[v].push_back(u);
    edges.emplace_back(u, v);
  }
  return edges;
}

// Pairs points by repeated shuffles, keeping admissible pairs and recycling
// the rest; nullopt when the leftovers admit no valid pair.
std::optional<std::vector<Edge>> incremental_attempt(std::size_t n, std::size_t d,
                                                     std::mt19937_64& rng) {
  constexpr int kMaxRounds = 10000;
  auto stubs = make_points(n, d);
  std::vector<std::vector<vertex_t>> adj(n);
  for (auto& a : adj) a.reserve(d);
  std::vector<Edge> edges;
  edges.reserve(n * d / 2);
  std::vector<vertex_t> leftover;

  for (int round = 0; round < kMaxRounds && !stubs.empty(); ++round) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    leftover.clear();
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      const vertex_t u = stubs[i];
      const vertex_t v = stubs[i + 1];
      if (u != v && !adjacent(adj, u, v)) {
        adj[u].push_back(v);
        adj[v].push_back(u);
        edges.emplace_back(u, v);
      } else {
        leftover.push_back(u);
        leftover.push_back(v);
      }
    }
    if (leftover.empty()) return edges;

    std::vector<vertex_t> distinct = leftover;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    bool completable = false;
    for (std::size_t i = 0; i < distinct.size() && !completable; ++i) {
      for (std::size_t j = i + 1; j < distinct.size(); ++j) {
        if (!adjacent(adj, distinct[i], distinct[j])) {
          completable = true;
          break;
        }
      }
    }
    if (!completable) return std::nullopt;
    stubs.swap(leftover);
  }
  return std::nullopt;
}

RegularGraph random_regular(const GenSpec& spec) {
  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    std::mt19937_64 rng(derive_seed(spec.seed, static_cast<std::uint64_t>(attempt), Purpose::graph));
    auto edges = spec.d <= 4 ? pairing_attempt(spec.n, spec.d, rng)
                             : incremental_attempt(spec.n, spec.d, rng);
    if (edges) return RegularGraph::from_edges(spec.n, spec.d, *edges);
  }
  throw GenerationError("random_regular: no simple graph after " + std::to_string(kMaxRestarts) +
                        " restarts (n = " + std::to_string(spec.n) + ", d = " +
                        std::to_string(spec.d) + ")");
}

RegularGraph hypercube(std::size_t dim) {
  const std::size_t n = std::size_t{1} << dim;
  std::vector<vertex_t> adj(n * dim);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t b = 0; b < dim; ++b) adj[v * dim + b] = static_cast<vertex_t>(v ^ (std::size_t{1} << b));
  }
  return RegularGraph::from_adjacency(n, dim, std::move(adj));
}

RegularGraph clique_union(std::size_t n, std::size_t d) {
  std::vector<vertex_t> adj;
  adj.reserve(n * d);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t block = v / (d + 1) * (d + 1);
    for (std::size_t u = block; u < block + d + 1; ++u) {
      if (u != v) adj.push_back(static_cast<vertex_t>(u));
    }
  }
  return RegularGraph::from_adjacency(n, d, std::move(adj));
}

RegularGraph blow_up(const RegularGraph& base, std::size_t s) {
  const std::size_t n = base.num_vertices() * s;
  const std::size_t d = base.degree() * s;
  std::vector<vertex_t> adj;
  adj.reserve(n * d);
  for (std::size_t v = 0; v < n; ++v) {
    for (vertex_t c : base.neighbors(static_cast<vertex_t>(v / s))) {
      for (std::size_t k = 0; k < s; ++k) adj.push_back(static_cast<vertex_t>(c * s + k));
    }
  }
  return RegularGraph::from_adjacency(n, d, std::move(adj)).with_blowup_factor(s);
}

}  // namespace

RegularGraph generate(const GenSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case Family::random_regular: return random_regular(spec);
    case Family::hypercube: return hypercube(spec.d);
    case Family::clique_union: return clique_union(spec.n, spec.d);
    case Family::blowup: return blow_up(generate(*spec.base), spec.blowup_factor);
  }
  throw SpecError("unhandled family");
}

vertex_t blowup_pair_index(const RegularGraph& g, vertex_t v) {
  if (g.blowup_factor() == 0) throw UsageError("graph was not produced by the blow-up generator");
  if (v >= g.num_vertices()) throw InputError("vertex id out of range");
  return static_cast<vertex_t>(v / g.blowup_factor());
}

}  // namespace ndl
