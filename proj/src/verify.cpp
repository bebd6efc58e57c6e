#include "ndl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ndl/errors.hpp"
#include "ndl/rng.hpp"
#include "ndl/theory.hpp"

namespace ndl {

namespace {

constexpr double kSlack = 1e-9;

std::string fmt_sizes(std::size_t a, std::size_t b) {
  return std::to_string(a) + "," + std::to_string(b);
}

VertexSet random_subset(std::size_t n, std::size_t k, SplitMix64& rng) {
  std::vector<vertex_t> ids(n);
  std::iota(ids.begin(), ids.end(), vertex_t{0});
  partial_shuffle(std::span<vertex_t>(ids), k, rng);
  VertexSet out(n);
  for (std::size_t i = 0; i < k; ++i) out.insert(ids[i]);
  return out;
}

void finish(ViolationReport& r) { r.pass = r.violation_count == 0; }

}  // namespace

void ViolationReport::add(Violation v) {
  ++violation_count;
  if (violations.size() < kMaxWitnesses) violations.push_back(std::move(v));
}

double ViolationReport::violation_rate() const noexcept {
  return instances_checked == 0 ? 0.0
                                : static_cast<double>(violation_count) / static_cast<double>(instances_checked);
}

double inflated_lambda(const SpectrumReport& report) {
  return report.lambda + std::max(report.residual2, report.residualN);
}

ViolationReport check_mixing(const RegularGraph& g, const SpectrumReport& report, const VertexSet& b,
                             const VertexSet& c) {
  const double n = static_cast<double>(g.num_vertices());
  const double d = static_cast<double>(g.degree());
  const double lambda = inflated_lambda(report);
  const double bs = static_cast<double>(b.size());
  const double cs = static_cast<double>(c.size());
  const double measured = std::abs(static_cast<double>(edge_count_between(g, b, c)) - d * bs * cs / n);
  const double bound = lambda * std::sqrt(bs * cs);

  ViolationReport r;
  r.checker = "mixing";
  r.instances_checked = 1;
  if (measured > bound + kSlack * (1.0 + bound)) r.add({"|B|,|C|=" + fmt_sizes(b.size(), c.size()), measured, bound});
  r.stats["lambda"] = lambda;
  r.stats["max_ratio"] = bound > 0.0 ? measured / bound : 0.0;
  finish(r);
  return r;
}

ViolationReport check_mixing(const RegularGraph& g, const SpectrumReport& report, std::size_t pairs,
                             std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  const double d = static_cast<double>(g.degree());
  const double lambda = inflated_lambda(report);
  struct Outcome {
    std::size_t b = 0, c = 0;
    double measured = 0.0, bound = 0.0;
  };
  std::vector<Outcome> out(pairs);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t i = 0; i < pairs; ++i) {
    SplitMix64 rng(derive_seed(seed, i, Purpose::checker));
    const auto bk = static_cast<std::size_t>(uniform_below(rng, n + 1));
    const auto ck = static_cast<std::size_t>(uniform_below(rng, n + 1));
    const VertexSet b = random_subset(n, bk, rng);
    const VertexSet c = random_subset(n, ck, rng);
    const double bs = static_cast<double>(bk);
    const double cs = static_cast<double>(ck);
    out[i] = {bk, ck,
              std::abs(static_cast<double>(edge_count_between(g, b, c)) - d * bs * cs / static_cast<double>(n)),
              lambda * std::sqrt(bs * cs)};
  }

  ViolationReport r;
  r.checker = "mixing";
  r.instances_checked = pairs;
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    const Outcome& o = out[i];
    if (o.bound > 0.0) worst = std::max(worst, o.measured / o.bound);
    if (o.measured > o.bound + kSlack * (1.0 + o.bound)) {
      r.add({"pair " + std::to_string(i) + " |B|,|C|=" + fmt_sizes(o.b, o.c), o.measured, o.bound});
    }
  }
  r.stats["lambda"] = lambda;
  r.stats["max_ratio"] = worst;
  finish(r);
  return r;
}

ViolationReport check_degree_concentration(const RegularGraph& g, const SpectrumReport& report,
                                           const VertexSet& b, double alpha) {
  const std::size_t n = g.num_vertices();
  if (b.universe() != n) throw InputError("vertex set universe does not match graph order");
  if (2 * b.size() < n) throw PreconditionError("degree concentration needs |B| >= n/2");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");

  const double d = static_cast<double>(g.degree());
  const double mean = static_cast<double>(b.size()) * d / static_cast<double>(n);
  const double lambda = inflated_lambda(report);
  const double bound = 2.0 / (alpha * alpha) * (lambda / d) * (lambda / d) * static_cast<double>(n);
  std::size_t heavy = 0;
  std::size_t light = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const double deg = static_cast<double>(degree_into(g, static_cast<vertex_t>(v), b));
    if (deg >= (1.0 + alpha) * mean) ++heavy;
    if (deg <= (1.0 - alpha) * mean) ++light;
  }

  ViolationReport r;
  r.checker = "degree_concentration";
  r.instances_checked = 2;
  if (static_cast<double>(heavy) > bound) r.add({"heavy |B|=" + std::to_string(b.size()), double(heavy), bound});
  if (static_cast<double>(light) > bound) r.add({"light |B|=" + std::to_string(b.size()), double(light), bound});
  r.stats["heavy"] = static_cast<double>(heavy);
  r.stats["light"] = static_cast<double>(light);
  r.stats["bound"] = bound;
  finish(r);
  return r;
}

SizeWindow expansion_window_sizes(std::size_t n, std::size_t d, double alpha) {
  const double scale = static_cast<double>(n) / static_cast<double>(d);
  SizeWindow w;
  w.lo = static_cast<std::size_t>(std::ceil(alpha * scale));
  w.hi = static_cast<std::size_t>(std::floor(scale / 3.0));
  w.lo = std::max<std::size_t>(w.lo, 1);
  return w;
}

ExpansionCheck classify_expansion(const RegularGraph& g, std::span<const vertex_t> s, double alpha) {
  std::vector<std::uint8_t> scratch(g.num_vertices(), 0);
  const double n = static_cast<double>(g.num_vertices());
  const double base = n * -std::expm1(-static_cast<double>(g.degree()) * static_cast<double>(s.size()) / n);
  ExpansionCheck e;
  e.size = s.size();
  e.neighborhood = external_neighborhood_size(g, s, scratch);
  e.lower = (1.0 - 2.0 * alpha) * base;
  e.upper = (1.0 + 2.0 * alpha) * base;
  return e;
}

ViolationReport check_expansion_window(const RegularGraph& g, const PercolationSample& sample,
                                       double alpha, std::size_t subsets, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  if (sample.membership.universe() != n) throw InputError("sample universe does not match graph order");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const SizeWindow w = expansion_window_sizes(n, g.degree(), alpha);
  if (w.empty()) {
    throw ConfigError("expansion window is empty: alpha n/d = " + std::to_string(w.lo) + " > n/(3d) = " +
                      std::to_string(w.hi));
  }
  const std::vector<vertex_t> retained = sample.membership.to_vector();
  if (retained.size() < w.lo) {
    throw PreconditionError("retained set (" + std::to_string(retained.size()) +
                            ") is smaller than the expansion window");
  }
  const std::size_t hi = std::min(w.hi, retained.size());

  std::vector<ExpansionCheck> out(subsets);
#pragma omp parallel
  {
    std::vector<vertex_t> pool;
    std::vector<std::uint8_t> scratch(n, 0);
#pragma omp for schedule(dynamic, 4)
    for (std::size_t i = 0; i < subsets; ++i) {
      SplitMix64 rng(derive_seed(seed, i, Purpose::checker));
      const std::size_t m = w.lo + static_cast<std::size_t>(uniform_below(rng, hi - w.lo + 1));
      pool = retained;
      partial_shuffle(std::span<vertex_t>(pool), m, rng);
      const std::span<const vertex_t> s(pool.data(), m);
      const double nn = static_cast<double>(n);
      const double base = nn * -std::expm1(-static_cast<double>(g.degree()) * static_cast<double>(m) / nn);
      out[i] = {m, external_neighborhood_size(g, s, scratch), (1.0 - 2.0 * alpha) * base,
                (1.0 + 2.0 * alpha) * base};
    }
  }

  ViolationReport r;
  r.checker = "expansion_window";
  r.instances_checked = subsets;
  std::size_t over = 0;
  std::size_t under = 0;
  double min_rel = std::numeric_limits<double>::infinity();
  double max_rel = 0.0;
  for (std::size_t i = 0; i < subsets; ++i) {
    const ExpansionCheck& e = out[i];
    const double centre = (e.lower + e.upper) / 2.0;
    const double rel = static_cast<double>(e.neighborhood) / centre;
    min_rel = std::min(min_rel, rel);
    max_rel = std::max(max_rel, rel);
    if (e.over()) {
      ++over;
      r.add({"over m=" + std::to_string(e.size) + " subset " + std::to_string(i), double(e.neighborhood), e.upper});
    } else if (e.under()) {
      ++under;
      r.add({"under m=" + std::to_string(e.size) + " subset " + std::to_string(i), double(e.neighborhood), e.lower});
    }
  }
  r.stats["over"] = static_cast<double>(over);
  r.stats["under"] = static_cast<double>(under);
  r.stats["m_lo"] = static_cast<double>(w.lo);
  r.stats["m_hi"] = static_cast<double>(hi);
  if (subsets > 0) {
    r.stats["min_relative"] = min_rel;
    r.stats["max_relative"] = max_rel;
  }
  finish(r);
  return r;
}

ViolationReport check_blowup_pairs(const RegularGraph& g, std::size_t subsets, std::uint64_t seed) {
  const std::size_t s = g.blowup_factor();
  if (s == 0) throw UsageError("blow-up check needs a graph from the blow-up generator");
  const std::size_t n = g.num_vertices();
  const std::size_t blocks = n / s;
  const double d = static_cast<double>(g.degree());

  ViolationReport r;
  r.checker = "blowup_pairs";
  r.instances_checked = subsets;
  std::vector<std::uint32_t> ids(blocks);
  std::vector<std::uint8_t> scratch(n, 0);
  std::vector<vertex_t> members;
  double worst = 0.0;
  for (std::size_t i = 0; i < subsets; ++i) {
    SplitMix64 rng(derive_seed(seed, i, Purpose::checker));
    const std::size_t k = 1 + static_cast<std::size_t>(uniform_below(rng, blocks));
    std::iota(ids.begin(), ids.end(), 0U);
    partial_shuffle(std::span<std::uint32_t>(ids), k, rng);
    members.clear();
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t t = 0; t < s; ++t) members.push_back(static_cast<vertex_t>(ids[j] * s + t));
    }
    const double measured = static_cast<double>(external_neighborhood_size(g, members, scratch));
    const double bound = static_cast<double>(members.size()) * d / static_cast<double>(s);
    worst = std::max(worst, measured / bound);
    if (measured > bound) r.add({"blocks=" + std::to_string(k), measured, bound});
  }
  r.stats["factor"] = static_cast<double>(s);
  r.stats["max_ratio"] = worst;
  finish(r);
  return r;
}

ViolationReport check_stream_properties(std::span<const std::uint8_t> coins, double epsilon, double d,
                                        StreamMode mode, double c) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  if (!(d > 0.0)) throw DomainError("d must be positive");
  const std::size_t n = coins.size();
  const double nn = static_cast<double>(n);

  ViolationReport r;
  r.checker = "stream";
  std::size_t ones = 0;
  for (auto x : coins) ones += x ? 1 : 0;
  r.stats["ones"] = static_cast<double>(ones);

  ++r.instances_checked;
  if (static_cast<double>(ones) > 2.0 * nn / d) r.add({"ones", double(ones), 2.0 * nn / d});

  if (mode == StreamMode::sub) {
    ++r.instances_checked;
    const double k_real = 4.0 / (epsilon * epsilon) * std::log(nn / d);
    const auto k = static_cast<std::size_t>(std::max(1.0, std::ceil(k_real)));
    const auto len = static_cast<std::size_t>(std::ceil(static_cast<double>(k) * d));
    // prefix[i] = ones among coins[0, i).
    std::vector<std::size_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (coins[i] ? 1 : 0);
    std::size_t densest = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (!coins[s]) continue;
      const std::size_t end = std::min(n, s + len);
      const std::size_t count = prefix[end] - prefix[s];
      densest = std::max(densest, count);
      if (count >= k) r.add({"window start " + std::to_string(s), double(count), double(k)});
    }
    r.stats["window_k"] = static_cast<double>(k);
    r.stats["window_max"] = static_cast<double>(densest);
  } else {
    ++r.instances_checked;
    const double bound = epsilon * epsilon * c * nn / d;
    double sum = 0.0;
    double worst = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      // sum holds X_1 + ... + X_t; coins[t] is X_{t+1}.
      if (coins[t]) {
        const double dev = std::abs(sum - (1.0 + epsilon) * static_cast<double>(t) / d);
        worst = std::max(worst, dev);
        if (dev > bound) r.add({"drift t=" + std::to_string(t), dev, bound});
      }
      sum += coins[t] ? 1.0 : 0.0;
    }
    r.stats["drift_max"] = worst;
    r.stats["drift_bound"] = bound;
  }
  finish(r);
  return r;
}

ViolationReport check_giant_expansion(const RegularGraph& g, const PercolationSample& sample,
                                      double epsilon, double alpha, std::size_t samples,
                                      double beta_test, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  const double scale = static_cast<double>(n) / static_cast<double>(g.degree());
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  const double x = solve_x(epsilon);
  const double lo_real = 16.0 * alpha * scale;
  const double hi_real = (x - 9.0 * alpha) * scale;
  if (!(hi_real >= lo_real)) {
    throw ConfigError("giant expansion window is empty: x - 9 alpha <= 16 alpha");
  }
  const auto labels = components_oracle(g, sample);
  if (labels.sizes.empty()) throw PreconditionError("no retained vertices");
  const auto giant = static_cast<vertex_t>(
      std::max_element(labels.sizes.begin(), labels.sizes.end()) - labels.sizes.begin());
  const std::size_t l1 = labels.sizes[giant];
  if (static_cast<double>(l1) < 0.5 * x * scale) {
    throw PreconditionError("largest component " + std::to_string(l1) + " is below the giant threshold");
  }
  std::vector<vertex_t> giant_vertices;
  giant_vertices.reserve(l1);
  for (std::size_t v = 0; v < n; ++v) {
    if (labels.component_of[v] == giant) giant_vertices.push_back(static_cast<vertex_t>(v));
  }

  const auto lo = static_cast<std::size_t>(std::ceil(lo_real));
  const std::size_t hi = std::min(static_cast<std::size_t>(std::floor(hi_real)), l1);
  const double threshold = beta_test * alpha * alpha / std::log(1.0 / alpha) * scale;

  ViolationReport r;
  r.checker = "giant_expansion";
  r.stats["threshold"] = threshold;
  r.stats["window_lo"] = static_cast<double>(lo);
  r.stats["window_hi"] = static_cast<double>(hi);
  r.stats["largest"] = static_cast<double>(l1);
  if (lo > hi) {
    r.instances_skipped = samples;
    finish(r);
    return r;
  }

  std::vector<std::size_t> measured(samples, 0);
#pragma omp parallel
  {
    std::vector<std::uint8_t> mark(n, 0);  // 1 = in S, 2 = counted neighbor
    std::vector<vertex_t> members;
#pragma omp for schedule(dynamic, 1)
    for (std::size_t i = 0; i < samples; ++i) {
      SplitMix64 rng(derive_seed(seed, i, Purpose::checker));
      const std::size_t target = lo + static_cast<std::size_t>(uniform_below(rng, hi - lo + 1));
      const vertex_t root = giant_vertices[uniform_below(rng, giant_vertices.size())];
      members.clear();
      members.push_back(root);
      mark[root] = 1;
      for (std::size_t head = 0; head < members.size() && members.size() < target; ++head) {
        for (vertex_t w : g.neighbors(members[head])) {
          if (mark[w] == 0 && sample.membership.contains(w)) {
            mark[w] = 1;
            members.push_back(w);
            if (members.size() == target) break;
          }
        }
      }
      std::size_t boundary = 0;
      std::vector<vertex_t> touched;
      for (vertex_t u : members) {
        for (vertex_t w : g.neighbors(u)) {
          if (mark[w] == 0 && sample.membership.contains(w)) {
            mark[w] = 2;
            touched.push_back(w);
            ++boundary;
          }
        }
      }
      for (vertex_t u : members) mark[u] = 0;
      for (vertex_t w : touched) mark[w] = 0;
      measured[i] = boundary;
    }
  }

  r.instances_checked = samples;
  std::size_t minimum = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < samples; ++i) {
    minimum = std::min(minimum, measured[i]);
    if (static_cast<double>(measured[i]) < threshold) {
      r.add({"sample " + std::to_string(i), double(measured[i]), threshold});
    }
  }
  if (samples > 0) r.stats["min_neighborhood"] = static_cast<double>(minimum);
  finish(r);
  return r;
}

}  // namespace ndl
