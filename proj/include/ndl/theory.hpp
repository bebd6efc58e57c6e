#pragma once

#include <cstddef>
#include <vector>

namespace ndl {

/// Root of x = (1+eps)(1 - e^{-x}) with x > 0: the giant fraction in units of n/d.
/// Throws DomainError unless 0 < eps <= 1.
double solve_x(double epsilon);

/// Root in (0, 1) of y e^{-y} = (1+eps) e^{-(1+eps)}.
double solve_y(double epsilon);

struct SeriesResult {
  double value = 0.0;
  double error_bound = 0.0;  // bound on the truncated tail
  std::size_t terms = 0;
};

/// sum_{k>=1} k^{k-1}/k! (1+eps)^{k-1} e^{-(1+eps)k}, which equals y/(1+eps).
SeriesResult series_tree_mass(double epsilon, double tol);

/// sum_{k>=1} (k-1) k^{k-2}/k! ((1+eps) e^{-(1+eps)})^k, which equals y^2/2.
SeriesResult series_tree_edge_mass(double epsilon, double tol);

/// Hypothesis windows on alpha for each prediction; informational only.
struct Admissibility {
  bool giant_size = false;       // 2 sqrt(d/n) < alpha < eps^2
  bool uniqueness = false;       // 2/ln(n/d) < alpha < eps^4
  bool giant_edges = false;      // 2/ln(n/d) < alpha < eps^8
  bool long_cycle = false;       // 2 sqrt(d/n) < alpha < eps^3
  bool giant_expansion = false;  // 2 sqrt(d/n) < alpha < eps^2
};

struct TheoryPrediction {
  double n = 0.0;
  double d = 0.0;
  double epsilon = 0.0;
  double alpha = 0.0;
  double x = 0.0;
  double y = 0.0;
  double giant_size = 0.0;            // x n/d
  double giant_size_tol = 0.0;        // 7 alpha n/d
  double giant_edges = 0.0;           // ((1+eps)^2 - (1+eps-x)^2) n/(2d)
  double giant_edges_tol = 0.0;       // 8 alpha^{1/4} n/d
  double edges_total = 0.0;           // (1+eps)^2 n/(2d)
  double small_tree_edges = 0.0;      // (1+eps-x)^2 n/(2d)
  double subcritical_bound = 0.0;     // (4/eps^2) ln(n/d)
  double straggler_bound = 0.0;       // 15 alpha n/d
  double cycle_bound = 0.0;           // eps^2 n/(100 d)
  double giant_threshold = 0.0;       // (x/2) n/d: L1 at least this counts as a giant
  double expansion_min_size = 0.0;    // 16 alpha n/d
  double expansion_max_size = 0.0;    // (x - 9 alpha) n/d
  std::vector<double> tree_counts;    // tree_counts[k-1] = (n/d) k^{k-2} (1+eps)^k e^{-(1+eps)k} / k!
  Admissibility admissible;
};

/// Throws DomainError for eps outside (0, 1], alpha outside (0, 1], or
/// non-positive n, d.
TheoryPrediction predict(double n, double d, double epsilon, double alpha, std::size_t k_max);

}  // namespace ndl
