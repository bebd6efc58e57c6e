#include "ndl/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "ndl/errors.hpp"
#include "ndl/kernels.hpp"
#include "ndl/rng.hpp"

namespace ndl {

std::string to_string(SpectrumMethod m) {
  switch (m) {
    case SpectrumMethod::automatic: return "automatic";
    case SpectrumMethod::dense: return "dense";
    case SpectrumMethod::iterative: return "iterative";
  }
  return "unknown";
}

namespace {

using Operator = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct ExtremePair {
  double theta = 0.0;
  double residual = 0.0;
  std::size_t matvecs = 0;
};

void project_off_ones(Eigen::VectorXd& x) { x.array() -= x.mean(); }

Eigen::VectorXd random_unit(std::size_t n, std::uint64_t seed) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) x[static_cast<Eigen::Index>(i)] = counter_uniform(seed, i) - 0.5;
  project_off_ones(x);
  x.normalize();
  return x;
}

// Largest eigenpair of a symmetric PSD operator on the complement of the
// all-ones vector, by thick-restart Lanczos with full reorthogonalization.
ExtremePair top_eigenpair(std::size_t n, const Operator& apply, const SpectrumOptions& opt,
                          double scale, std::uint64_t seed) {
  const auto space = static_cast<Eigen::Index>(n - 1);
  const Eigen::Index m = std::min<Eigen::Index>(static_cast<Eigen::Index>(opt.krylov_dim), space);
  const Eigen::Index keep = std::max<Eigen::Index>(1, m / 2);
  const auto nn = static_cast<Eigen::Index>(n);

  Eigen::MatrixXd basis(nn, m + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + 1, m + 1);
  Eigen::VectorXd w(nn);
  Eigen::VectorXd y(nn);
  Eigen::VectorXd my(nn);

  basis.col(0) = random_unit(n, seed);
  Eigen::Index cols = 0;  // columns of h computed
  Eigen::Index nb = 1;    // basis vectors present
  double beta = 0.0;
  std::size_t matvecs = 0;
  std::uint64_t refresh = 1;
  double last_residual = std::numeric_limits<double>::infinity();

  while (true) {
    bool invariant = false;
    while (cols < m) {
      apply(basis.col(cols), w);
      ++matvecs;
      Eigen::VectorXd coef = basis.leftCols(nb).transpose() * w;
      w.noalias() -= basis.leftCols(nb) * coef;
      Eigen::VectorXd again = basis.leftCols(nb).transpose() * w;
      w.noalias() -= basis.leftCols(nb) * again;
      coef += again;
      h.block(0, cols, nb, 1) = coef;
      h.block(cols, 0, 1, nb) = coef.transpose();
      ++cols;
      beta = w.norm();
      if (beta <= 1e-13 * scale) {
        invariant = true;
        break;
      }
      basis.col(nb++) = w / beta;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(h.topLeftCorner(cols, cols));
    const Eigen::VectorXd& theta = ritz.eigenvalues();  // ascending
    const Eigen::MatrixXd& s = ritz.eigenvectors();
    const double estimate = invariant ? 0.0 : std::abs(beta * s(cols - 1, cols - 1));

    if (estimate <= 0.5 * opt.tol || matvecs >= opt.max_iterations) {
      y.noalias() = basis.leftCols(cols) * s.col(cols - 1);
      project_off_ones(y);
      y.normalize();
      apply(y, my);
      ++matvecs;
      const double rq = y.dot(my);
      last_residual = (my - rq * y).norm();
      if (last_residual <= opt.tol) return {rq, last_residual, matvecs};
      if (matvecs >= opt.max_iterations) {
        throw ConvergenceError("eigensolver did not converge within " +
                                   std::to_string(opt.max_iterations) + " iterations (residual " +
                                   std::to_string(last_residual) + ")",
                               last_residual);
      }
    }

    // Thick restart: keep the top Ritz vectors, continue from the last
    // Lanczos vector (or a fresh random direction if the space was invariant).
    const Eigen::Index k = std::min(keep, cols - (invariant ? 0 : 1));
    Eigen::MatrixXd kept = basis.leftCols(cols) * s.rightCols(k);
    Eigen::VectorXd next;
    if (!invariant) {
      next = basis.col(nb - 1);
    } else {
      next = random_unit(n, seed + refresh++);
      for (int pass = 0; pass < 2; ++pass) next -= kept * (kept.transpose() * next);
      project_off_ones(next);
      const double len = next.norm();
      if (len <= 1e-13) {
        // The kept Ritz vectors span the whole complement: the pair is exact.
        y = kept.col(k - 1);
        apply(y, my);
        ++matvecs;
        const double rq = y.dot(my);
        return {rq, (my - rq * y).norm(), matvecs};
      }
      next /= len;
    }
    basis.leftCols(k) = kept;
    basis.col(k) = next;
    h.setZero();
    for (Eigen::Index i = 0; i < k; ++i) h(i, i) = theta[cols - k + i];
    cols = k;
    nb = k + 1;
  }
}

SpectrumReport dense_spectrum(const RegularGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index v = 0; v < n; ++v) {
    for (vertex_t u : g.neighbors(static_cast<vertex_t>(v))) a(v, u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const auto& ev = es.eigenvalues();
  SpectrumReport r;
  r.method = SpectrumMethod::dense;
  r.lambda1 = ev[n - 1];
  r.lambda2 = n >= 2 ? ev[n - 2] : ev[0];
  r.lambdaN = ev[0];
  r.residual2 = (a * es.eigenvectors().col(n - 2) - r.lambda2 * es.eigenvectors().col(n - 2)).norm();
  r.residualN = (a * es.eigenvectors().col(0) - r.lambdaN * es.eigenvectors().col(0)).norm();
  r.iterations = 0;
  return r;
}

SpectrumReport iterative_spectrum(const RegularGraph& g, const SpectrumOptions& opt) {
  const std::size_t n = g.num_vertices();
  const double d = static_cast<double>(g.degree());
  Eigen::VectorXd ax(static_cast<Eigen::Index>(n));
  auto adjacency = [&](const Eigen::VectorXd& x) {
    kernels::omp::spmv(g, std::span<const double>(x.data(), n), std::span<double>(ax.data(), n));
  };
  const Operator upper = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    adjacency(x);
    out = ax + d * x;
    project_off_ones(out);
  };
  const Operator lower = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    adjacency(x);
    out = d * x - ax;
    project_off_ones(out);
  };
  const ExtremePair top = top_eigenpair(n, upper, opt, 2.0 * d, derive_seed(opt.seed, 2, Purpose::spectrum));
  const ExtremePair bottom = top_eigenpair(n, lower, opt, 2.0 * d, derive_seed(opt.seed, 3, Purpose::spectrum));

  SpectrumReport r;
  r.method = SpectrumMethod::iterative;
  r.lambda1 = d;
  r.lambda2 = top.theta - d;
  r.lambdaN = d - bottom.theta;
  r.residual2 = top.residual;
  r.residualN = bottom.residual;
  r.iterations = top.matvecs + bottom.matvecs;
  return r;
}

}  // namespace

SpectrumReport compute_spectrum(const RegularGraph& g, const SpectrumOptions& options) {
  if (!(options.tol > 0.0)) throw InputError("spectrum tolerance must be positive");
  SpectrumMethod method = options.method;
  if (method == SpectrumMethod::automatic) {
    method = g.num_vertices() <= options.dense_limit ? SpectrumMethod::dense : SpectrumMethod::iterative;
  }
  if (g.num_vertices() < 2) throw InputError("spectrum needs n >= 2");
  SpectrumReport r = method == SpectrumMethod::dense ? dense_spectrum(g) : iterative_spectrum(g, options);
  const double d = static_cast<double>(g.degree());
  r.lambda = std::max(std::abs(r.lambda2), std::abs(r.lambdaN));
  r.ratio = r.lambda / d;
  r.connected = std::abs(r.lambda2 - d) >= options.tol;
  return r;
}

double delta_of_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  return std::pow(alpha, 2.0 / alpha);
}

Certificate certify(const SpectrumReport& report, double alpha) {
  Certificate c;
  c.alpha = alpha;
  c.threshold = delta_of_alpha(alpha);
  c.admissible = report.ratio <= c.threshold;
  c.report = report;
  return c;
}

Certificate certify(const RegularGraph& g, double alpha, const SpectrumOptions& options) {
  delta_of_alpha(alpha);
  return certify(compute_spectrum(g, options), alpha);
}

}  // namespace ndl
