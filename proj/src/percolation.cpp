#include "ndl/percolation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ndl/errors.hpp"
#include "ndl/rng.hpp"

namespace ndl {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("retention probability must lie in [0, 1]");
}

enum class State : std::uint8_t { unvisited, active, explored, rejected };

}  // namespace

std::vector<std::uint8_t> PercolationSample::member_bytes() const {
  std::vector<std::uint8_t> bytes(membership.universe(), 0);
  membership.for_each([&](vertex_t v) { bytes[v] = 1; });
  return bytes;
}

PercolationSample sample_vertices(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p);
  const auto bytes = kernels::omp::sample_membership(n, p, seed);
  PercolationSample s{p, seed, VertexSet(n)};
  for (std::size_t v = 0; v < n; ++v) {
    if (bytes[v]) s.membership.insert(static_cast<vertex_t>(v));
  }
  return s;
}

CoinStream::CoinStream(std::uint64_t seed, double p) : seed_(seed), p_(p) { check_probability(p); }

CoinStream CoinStream::scripted(std::vector<std::uint8_t> coins) {
  CoinStream s;
  s.scripted_ = true;
  std::size_t heads = 0;
  for (auto c : coins) heads += c ? 1 : 0;
  s.p_ = coins.empty() ? 0.0 : static_cast<double>(heads) / static_cast<double>(coins.size());
  s.script_ = std::move(coins);
  return s;
}

bool CoinStream::draw() {
  if (scripted_) {
    if (consumed_ >= script_.size()) {
      throw std::logic_error("coin stream exhausted after " + std::to_string(consumed_) + " draws");
    }
    return script_[consumed_++] != 0;
  }
  return counter_uniform(seed_, consumed_++) < p_;
}

std::vector<std::uint8_t> realize_coins(std::uint64_t seed, double p, std::size_t n) {
  CoinStream stream(seed, p);
  std::vector<std::uint8_t> out(n);
  for (auto& c : out) c = stream.draw() ? 1 : 0;
  return out;
}

std::size_t DfsTrace::largest_epoch() const noexcept {
  return epoch_sizes.empty() ? 0 : *std::max_element(epoch_sizes.begin(), epoch_sizes.end());
}

VertexSet DfsTrace::accepted_set() const {
  return VertexSet::from_list(component_of.size(), accepted_order);
}

DfsTrace run_dfs(const RegularGraph& g, CoinStream& stream, const DfsOptions& options) {
  const std::size_t n = g.num_vertices();
  const std::size_t d = g.degree();
  if (stream.consumed() != 0) throw UsageError("run_dfs needs a fresh coin stream");

  std::vector<vertex_t> order;
  std::span<const vertex_t> adjacency = g.adjacency();
  std::vector<vertex_t> ranked;
  if (!options.priority.empty()) {
    if (options.priority.size() != n) throw InputError("priority must be a permutation of the vertices");
    std::vector<std::size_t> rank(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const vertex_t v = options.priority[i];
      if (v >= n || rank[v] != n) throw InputError("priority must be a permutation of the vertices");
      rank[v] = i;
    }
    order.assign(options.priority.begin(), options.priority.end());
    ranked.assign(adjacency.begin(), adjacency.end());
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(ranked.begin() + static_cast<std::ptrdiff_t>(v * d),
                ranked.begin() + static_cast<std::ptrdiff_t>((v + 1) * d),
                [&](vertex_t a, vertex_t b) { return rank[a] < rank[b]; });
    }
    adjacency = ranked;
  }

  DfsTrace trace;
  trace.component_of.assign(n, kRejected);
  trace.coins.reserve(n);
  std::vector<State> state(n, State::unvisited);
  std::vector<std::uint32_t> cursor(n, 0);
  std::vector<vertex_t> stack;
  std::size_t next_root = 0;
  vertex_t epoch = kRejected;
  std::size_t epoch_begin = 0;

  auto flip = [&]() {
    const bool heads = stream.draw();
    trace.coins.push_back(heads ? 1 : 0);
    return heads;
  };
  auto accept = [&](vertex_t v) {
    state[v] = State::active;
    stack.push_back(v);
    trace.component_of[v] = epoch;
    trace.accepted_order.push_back(v);
  };
  std::size_t accepted_before = 0;
  auto close_epoch = [&]() {
    trace.queries_per_epoch.push_back(stream.consumed() - epoch_begin);
    trace.epoch_sizes.push_back(trace.accepted_order.size() - accepted_before);
    if (options.check_frontier) {
      // Vertices that just reached S are this epoch's; their neighbors must
      // all be in S or W now that U is empty.
      const std::size_t size = trace.epoch_sizes.back();
      const auto first = trace.accepted_order.end() - static_cast<std::ptrdiff_t>(size);
      for (auto it = first; it != trace.accepted_order.end(); ++it) {
        for (vertex_t w : g.neighbors(*it)) {
          if (state[w] == State::unvisited || state[w] == State::active) {
            throw std::logic_error("frontier containment violated at vertex " + std::to_string(*it));
          }
        }
      }
    }
  };

  while (true) {
    if (stack.empty()) {
      while (next_root < n) {
        const vertex_t v = order.empty() ? static_cast<vertex_t>(next_root) : order[next_root];
        if (state[v] == State::unvisited) break;
        ++next_root;
      }
      if (next_root == n) break;
      const vertex_t v = order.empty() ? static_cast<vertex_t>(next_root) : order[next_root];
      const std::size_t coin_index = stream.consumed();
      if (flip()) {
        epoch = static_cast<vertex_t>(trace.epoch_starts.size());
        trace.epoch_starts.push_back(coin_index);
        epoch_begin = coin_index;
        accepted_before = trace.accepted_order.size();
        accept(v);
      } else {
        state[v] = State::rejected;
        ++trace.final_w;
      }
      continue;
    }

    const vertex_t u = stack.back();
    const vertex_t* row = adjacency.data() + static_cast<std::size_t>(u) * d;
    std::uint32_t& c = cursor[u];
    while (c < d && state[row[c]] != State::unvisited) ++c;
    if (c < d) {
      const vertex_t w = row[c];
      if (flip()) {
        accept(w);
      } else {
        state[w] = State::rejected;
        ++trace.final_w;
      }
      continue;
    }
    state[u] = State::explored;
    ++trace.final_s;
    stack.pop_back();
    if (stack.empty()) close_epoch();
  }

  trace.coins_consumed = stream.consumed();
  if (trace.coins_consumed != n || trace.final_s + trace.final_w != n) {
    throw std::logic_error("DFS drew " + std::to_string(trace.coins_consumed) + " coins for " +
                           std::to_string(n) + " vertices");
  }
  return trace;
}

PercolationSample sample_from_trace(const DfsTrace& trace, double p, std::uint64_t seed) {
  return PercolationSample{p, seed, trace.accepted_set()};
}

std::vector<vertex_t> canonical_partition(std::span<const vertex_t> component_of) {
  std::vector<vertex_t> out(component_of.size(), kRejected);
  std::vector<vertex_t> remap;
  vertex_t next = 0;
  for (std::size_t v = 0; v < component_of.size(); ++v) {
    const vertex_t c = component_of[v];
    if (c == kRejected) continue;
    if (c >= remap.size()) remap.resize(static_cast<std::size_t>(c) + 1, kRejected);
    if (remap[c] == kRejected) remap[c] = next++;
    out[v] = remap[c];
  }
  return out;
}

ComponentLabeling components_oracle(const RegularGraph& g, const PercolationSample& sample) {
  if (sample.membership.universe() != g.num_vertices()) {
    throw InputError("sample universe does not match graph order");
  }
  const auto member = sample.member_bytes();
  const auto roots = kernels::omp::label_components(g, member);
  ComponentLabeling out;
  out.component_of.assign(g.num_vertices(), kRejected);
  std::vector<vertex_t> id_of_root(g.num_vertices(), kRejected);
  for (std::size_t v = 0; v < roots.size(); ++v) {
    const vertex_t r = roots[v];
    if (r == kRejected) continue;
    if (id_of_root[r] == kRejected) {
      id_of_root[r] = static_cast<vertex_t>(out.sizes.size());
      out.sizes.push_back(0);
    }
    out.component_of[v] = id_of_root[r];
    ++out.sizes[id_of_root[r]];
  }
  return out;
}

}  // namespace ndl
