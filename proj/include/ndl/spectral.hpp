#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "ndl/graph.hpp"

namespace ndl {

enum class SpectrumMethod { automatic, dense, iterative };

std::string to_string(SpectrumMethod m);

struct SpectrumOptions {
  double tol = 1e-8;
  std::size_t max_iterations = 100000;  // matrix-vector products per extreme eigenvalue
  SpectrumMethod method = SpectrumMethod::automatic;
  std::size_t dense_limit = 2000;       // automatic picks dense for n <= dense_limit
  std::size_t krylov_dim = 48;          // iterative basis size before a thick restart
  std::uint64_t seed = 0x5eed;          // start vector
};

/// Extreme nontrivial adjacency eigenvalues and their certificates.
struct SpectrumReport {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambdaN = 0.0;
  double lambda = 0.0;  // max(|lambda2|, |lambdaN|)
  double ratio = 0.0;   // lambda / d
  double residual2 = 0.0;  // ||A v - lambda2 v||_2 for the reported unit vector
  double residualN = 0.0;
  std::size_t iterations = 0;
  SpectrumMethod method = SpectrumMethod::dense;
  bool connected = true;  // false when lambda2 is within tol of d
};

/// Dense path (small n): full symmetric eigendecomposition (Householder
/// tridiagonalization + implicit QL), residuals from the eigenvectors.
///
/// Iterative path: thick-restart Lanczos on the shifted operators A + dI and
/// dI - A restricted to the complement of the all-ones vector. Both are
/// positive semidefinite there, so their top eigenvalues give lambda2 + d and
/// d - lambdaN. Converged when the true residual is <= tol.
///
/// Throws ConvergenceError (carrying the last residual) if the iteration cap
/// is hit, InputError if tol <= 0.
SpectrumReport compute_spectrum(const RegularGraph& g, const SpectrumOptions& options = {});

/// alpha^(2/alpha). Throws DomainError unless 0 < alpha <= 1.
double delta_of_alpha(double alpha);

struct Certificate {
  bool admissible = false;  // ratio <= delta(alpha)
  double threshold = 0.0;
  double alpha = 0.0;
  SpectrumReport report;
};

Certificate certify(const SpectrumReport& report, double alpha);
Certificate certify(const RegularGraph& g, double alpha, const SpectrumOptions& options = {});

}  // namespace ndl
