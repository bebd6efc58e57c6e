#include "ndl/theory.hpp"

#include <cmath>
#include <numbers>

#include "ndl/errors.hpp"

namespace ndl {

namespace {

void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
}

// Bisection down to adjacent doubles. f(lo) < 0 < f(hi).
template <class F>
double bisect(F&& f, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

// log(k^k / k!), accurate for large k via the Stirling series.
double log_kk_over_kfact(double k) {
  if (k < 20.0) return k * std::log(k) - std::lgamma(k + 1.0);
  const double inv = 1.0 / k;
  const double inv2 = inv * inv;
  const double corr = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0)));
  return k - 0.5 * std::log(2.0 * std::numbers::pi * k) - corr;
}

// Sums term(k) for k = 1, 2, ... where log term(k) = log_kk_over_kfact(k) +
// k*log(z) + extra(k). The ratio of consecutive k^k/k! z^k factors increases
// to z*e from below, so once extra(k) is non-increasing the tail after term K
// is at most term(K) * r / (1 - r) with r = z*e < 1.
template <class Extra>
SeriesResult sum_series(double log_ze, Extra&& extra, double tol) {
  const double r = std::exp(log_ze);
  SeriesResult out;
  double sum = 0.0;
  double comp = 0.0;  // Kahan
  for (std::size_t k = 1;; ++k) {
    const double kk = static_cast<double>(k);
    // log(z^k) = k*(log(ze) - 1).
    const double log_term = log_kk_over_kfact(kk) + kk * (log_ze - 1.0) + extra(kk);
    const double term = std::exp(log_term);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    out.terms = k;
    const double tail = term * r / (1.0 - r);
    if (k >= 2 && tail <= tol) {
      out.error_bound = tail;
      break;
    }
    if (k > 200'000'000) {
      out.error_bound = tail;
      break;
    }
  }
  out.value = sum;
  return out;
}

}  // namespace

double solve_x(double epsilon) {
  check_epsilon(epsilon);
  const double c = 1.0 + epsilon;
  // f < 0 just above ln(1+eps), f(1+eps) = (1+eps) e^{-(1+eps)} > 0.
  auto f = [c](double x) { return x + c * std::expm1(-x); };
  return bisect(f, std::log1p(epsilon), c);
}

double solve_y(double epsilon) {
  check_epsilon(epsilon);
  const double c = 1.0 + epsilon;
  const double target = c * std::exp(-c);
  auto g = [target](double y) { return y * std::exp(-y) - target; };
  return bisect(g, 0.0, 1.0);
}

SeriesResult series_tree_mass(double epsilon, double tol) {
  check_epsilon(epsilon);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double log_c = std::log1p(epsilon);
  const double log_ze = log_c - epsilon;  // log((1+eps) e^{-(1+eps)} * e)
  // k^{k-1}/k! z^k / c: extra = -log k - log c.
  return sum_series(log_ze, [log_c](double k) { return -std::log(k) - log_c; }, tol);
}

SeriesResult series_tree_edge_mass(double epsilon, double tol) {
  check_epsilon(epsilon);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double log_ze = std::log1p(epsilon) - epsilon;
  // (k-1) k^{k-2}/k! z^k: extra = log(k-1) - 2 log k, non-increasing for k >= 2.
  return sum_series(
      log_ze,
      [](double k) { return k == 1.0 ? -INFINITY : std::log(k - 1.0) - 2.0 * std::log(k); },
      tol);
}

TheoryPrediction predict(double n, double d, double epsilon, double alpha, std::size_t k_max) {
  check_epsilon(epsilon);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (!(n > 0.0 && d > 0.0)) throw DomainError("n and d must be positive");

  const double scale = n / d;
  const double c = 1.0 + epsilon;
  TheoryPrediction t;
  t.n = n;
  t.d = d;
  t.epsilon = epsilon;
  t.alpha = alpha;
  t.x = solve_x(epsilon);
  t.y = solve_y(epsilon);
  t.giant_size = t.x * scale;
  t.giant_size_tol = 7.0 * alpha * scale;
  t.giant_edges = (c * c - (c - t.x) * (c - t.x)) * scale / 2.0;
  t.giant_edges_tol = 8.0 * std::pow(alpha, 0.25) * scale;
  t.edges_total = c * c * scale / 2.0;
  t.small_tree_edges = (c - t.x) * (c - t.x) * scale / 2.0;
  t.subcritical_bound = 4.0 / (epsilon * epsilon) * std::log(scale);
  t.straggler_bound = 15.0 * alpha * scale;
  t.cycle_bound = epsilon * epsilon * scale / 100.0;
  t.giant_threshold = 0.5 * t.x * scale;
  t.expansion_min_size = 16.0 * alpha * scale;
  t.expansion_max_size = (t.x - 9.0 * alpha) * scale;

  t.tree_counts.resize(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double kk = static_cast<double>(k);
    const double log_v = (kk - 2.0) * std::log(kk) + kk * std::log(c) - c * kk - std::lgamma(kk + 1.0);
    t.tree_counts[k - 1] = scale * std::exp(log_v);
  }

  const double low_sqrt = 2.0 * std::sqrt(d / n);
  const double low_log = scale > 1.0 ? 2.0 / std::log(scale) : INFINITY;
  const double e2 = epsilon * epsilon;
  t.admissible.giant_size = low_sqrt < alpha && alpha < e2;
  t.admissible.uniqueness = low_log < alpha && alpha < e2 * e2;
  t.admissible.giant_edges = low_log < alpha && alpha < e2 * e2 * e2 * e2;
  t.admissible.long_cycle = low_sqrt < alpha && alpha < e2 * epsilon;
  t.admissible.giant_expansion = low_sqrt < alpha && alpha < e2;
  return t;
}

}  // namespace ndl
