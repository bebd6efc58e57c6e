#include "ndl/graph.hpp"

#include <algorithm>
#include <string>

#include "ndl/errors.hpp"

namespace ndl {

namespace {

void check_vertex(const RegularGraph& g, vertex_t v) {
  if (v >= g.num_vertices()) {
    throw InputError("vertex id " + std::to_string(v) + " out of range for n = " +
                     std::to_string(g.num_vertices()));
  }
}

void check_universe(const RegularGraph& g, const VertexSet& s) {
  if (s.universe() != g.num_vertices()) {
    throw InputError("vertex set universe " + std::to_string(s.universe()) +
                     " does not match graph order " + std::to_string(g.num_vertices()));
  }
}

}  // namespace

RegularGraph::RegularGraph(std::size_t n, std::size_t d, std::vector<vertex_t> neighbors)
    : n_(n), d_(d), offsets_(n + 1), neighbors_(std::move(neighbors)) {
  if (n == 0) throw InputError("graph must have at least one vertex");
  if (d == 0 || d >= n) throw InputError("degree must satisfy 1 <= d < n");
  if (neighbors_.size() != n * d) throw InputError("adjacency array must hold n*d entries");
  for (std::size_t i = 0; i <= n; ++i) offsets_[i] = i * d;

  for (std::size_t v = 0; v < n; ++v) {
    auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(v * d);
    auto last = first + static_cast<std::ptrdiff_t>(d);
    std::sort(first, last);
    for (auto it = first; it != last; ++it) {
      if (*it >= n) throw InputError("neighbor id " + std::to_string(*it) + " out of range");
      if (*it == v) throw RegularityError(v, "self-loop");
      if (it != first && *it == *(it - 1)) {
        throw RegularityError(v, "repeated neighbor " + std::to_string(*it));
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (vertex_t u : this->neighbors(static_cast<vertex_t>(v))) {
      if (!has_edge(u, static_cast<vertex_t>(v))) {
        throw RegularityError(v, "adjacency to " + std::to_string(u) + " is not symmetric");
      }
    }
  }
}

RegularGraph RegularGraph::from_adjacency(std::size_t n, std::size_t d,
                                          std::vector<vertex_t> neighbors) {
  return RegularGraph(n, d, std::move(neighbors));
}

RegularGraph RegularGraph::from_edges(std::size_t n, std::size_t d, std::span<const Edge> edges) {
  if (n == 0) throw InputError("graph must have at least one vertex");
  std::vector<std::size_t> fill(n, 0);
  std::vector<vertex_t> adj(n * d);
  auto push = [&](vertex_t from, vertex_t to) {
    if (fill[from] == d) throw RegularityError(from, "degree exceeds " + std::to_string(d));
    adj[from * d + fill[from]++] = to;
  };
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has an endpoint out of range");
    }
    if (u == v) throw RegularityError(u, "self-loop");
    push(u, v);
    push(v, u);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (fill[v] != d) {
      throw RegularityError(v, "degree " + std::to_string(fill[v]) + " but expected " +
                                   std::to_string(d));
    }
  }
  return RegularGraph(n, d, std::move(adj));
}

bool RegularGraph::has_edge(vertex_t u, vertex_t v) const {
  if (u >= n_ || v >= n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> RegularGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t u = 0; u < n_; ++u) {
    for (vertex_t v : neighbors(static_cast<vertex_t>(u))) {
      if (u < v) out.emplace_back(static_cast<vertex_t>(u), v);
    }
  }
  return out;
}

RegularGraph RegularGraph::with_blowup_factor(std::size_t s) const {
  RegularGraph copy = *this;
  copy.blowup_factor_ = s;
  return copy;
}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  for (std::size_t v = 0; v < universe; ++v) s.insert(static_cast<vertex_t>(v));
  return s;
}

VertexSet VertexSet::from_list(std::size_t universe, std::span<const vertex_t> members) {
  VertexSet s(universe);
  for (vertex_t v : members) s.insert(v);
  return s;
}

void VertexSet::insert(vertex_t v) {
  if (v >= universe_) throw InputError("vertex " + std::to_string(v) + " outside set universe");
  std::uint64_t& w = words_[v >> 6];
  const std::uint64_t mask = std::uint64_t{1} << (v & 63);
  if (!(w & mask)) {
    w |= mask;
    ++count_;
  }
}

void VertexSet::erase(vertex_t v) {
  if (v >= universe_) throw InputError("vertex " + std::to_string(v) + " outside set universe");
  std::uint64_t& w = words_[v >> 6];
  const std::uint64_t mask = std::uint64_t{1} << (v & 63);
  if (w & mask) {
    w &= ~mask;
    --count_;
  }
}

std::vector<vertex_t> VertexSet::to_vector() const {
  std::vector<vertex_t> out;
  out.reserve(count_);
  for_each([&](vertex_t v) { out.push_back(v); });
  return out;
}

std::size_t degree_into(const RegularGraph& g, vertex_t v, const VertexSet& b) {
  check_vertex(g, v);
  check_universe(g, b);
  std::size_t count = 0;
  for (vertex_t u : g.neighbors(v)) count += b.contains(u) ? 1 : 0;
  return count;
}

std::size_t edge_count_between(const RegularGraph& g, const VertexSet& b, const VertexSet& c) {
  check_universe(g, b);
  check_universe(g, c);
  std::size_t count = 0;
  b.for_each([&](vertex_t u) {
    for (vertex_t v : g.neighbors(u)) count += c.contains(v) ? 1 : 0;
  });
  return count;
}

VertexSet external_neighborhood(const RegularGraph& g, const VertexSet& s) {
  check_universe(g, s);
  VertexSet out(g.num_vertices());
  s.for_each([&](vertex_t u) {
    for (vertex_t v : g.neighbors(u)) {
      if (!s.contains(v)) out.insert(v);
    }
  });
  return out;
}

std::size_t external_neighborhood_size(const RegularGraph& g, std::span<const vertex_t> s,
                                       std::vector<std::uint8_t>& scratch) {
  scratch.resize(g.num_vertices(), 0);
  for (vertex_t u : s) {
    check_vertex(g, u);
    scratch[u] = 1;
  }
  std::size_t count = 0;
  for (vertex_t u : s) {
    for (vertex_t v : g.neighbors(u)) {
      if (scratch[v] == 0) {
        scratch[v] = 2;
        ++count;
      }
    }
  }
  for (vertex_t u : s) {
    scratch[u] = 0;
    for (vertex_t v : g.neighbors(u)) scratch[v] = 0;
  }
  return count;
}

}  // namespace ndl
