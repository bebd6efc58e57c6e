#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ndl/errors.hpp"
#include "ndl/generators.hpp"
#include "ndl/spectral.hpp"

using namespace ndl;

namespace {

void check_extremes(const RegularGraph& g, double l2, double ln, SpectrumMethod m) {
  SpectrumOptions o;
  o.method = m;
  const auto r = compute_spectrum(g, o);
  CHECK(r.lambda1 == doctest::Approx(static_cast<double>(g.degree())).epsilon(1e-12));
  CHECK(std::abs(r.lambda2 - l2) <= 1e-8);
  CHECK(std::abs(r.lambdaN - ln) <= 1e-8);
  CHECK(r.lambda == doctest::Approx(std::max(std::abs(l2), std::abs(ln))));
  CHECK(r.residual2 <= 1e-8);
  CHECK(r.residualN <= 1e-8);
  CHECK(r.method == m);
}

}  // namespace

TEST_CASE("closed-form spectra") {
  for (auto m : {SpectrumMethod::dense, SpectrumMethod::iterative}) {
    CAPTURE(to_string(m));
    check_extremes(fixtures::complete(4), -1.0, -1.0, m);
    check_extremes(fixtures::cycle(6), 1.0, -2.0, m);
    check_extremes(fixtures::petersen(), 1.0, -2.0, m);
    check_extremes(generate(GenSpec::hypercube(4)), 2.0, -4.0, m);
  }
  const auto k4 = compute_spectrum(fixtures::complete(4));
  CHECK(k4.ratio == doctest::Approx(1.0 / 3.0));
  CHECK(compute_spectrum(fixtures::petersen()).ratio == doctest::Approx(2.0 / 3.0));
  CHECK(compute_spectrum(fixtures::cycle(6)).ratio == doctest::Approx(1.0));
}

TEST_CASE("dense and iterative paths agree") {
  for (std::uint64_t seed : {1, 2}) {
    const auto g = generate(GenSpec::random_regular(600, 7, seed));
    SpectrumOptions d, i;
    d.method = SpectrumMethod::dense;
    i.method = SpectrumMethod::iterative;
    const auto a = compute_spectrum(g, d);
    const auto b = compute_spectrum(g, i);
    CHECK(std::abs(a.lambda2 - b.lambda2) <= 1e-7);
    CHECK(std::abs(a.lambdaN - b.lambdaN) <= 1e-7);
    CHECK(a.connected);
  }
}

TEST_CASE("bipartite graphs have lambda_n = -d") {
  SpectrumOptions o;
  o.method = SpectrumMethod::iterative;
  const auto r = compute_spectrum(generate(GenSpec::hypercube(9)), o);
  CHECK(std::abs(r.lambdaN + 9.0) <= 1e-8);
}

TEST_CASE("disconnected graphs are flagged, not rejected") {
  const auto r = compute_spectrum(generate(GenSpec::clique_union(12, 3)));
  CHECK_FALSE(r.connected);
  CHECK(r.lambda2 == doctest::Approx(3.0));
  CHECK(r.ratio == doctest::Approx(1.0));
}

TEST_CASE("iteration cap raises a convergence error with a residual") {
  SpectrumOptions o;
  o.method = SpectrumMethod::iterative;
  o.max_iterations = 5;
  o.krylov_dim = 4;
  try {
    (void)compute_spectrum(generate(GenSpec::random_regular(3000, 10, 4)), o);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > o.tol);
  }
  SpectrumOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(compute_spectrum(fixtures::complete(4), bad), InputError);
}

TEST_CASE("delta of alpha") {
  CHECK(delta_of_alpha(1.0) == 1.0);
  CHECK(delta_of_alpha(0.5) == doctest::Approx(0.0625));
  CHECK(delta_of_alpha(0.1) == doctest::Approx(1e-20));
  CHECK_THROWS_AS(delta_of_alpha(0.0), DomainError);
  CHECK_THROWS_AS(delta_of_alpha(1.5), DomainError);
}

TEST_CASE("certificates") {
  CHECK(certify(fixtures::complete(4), 1.0).admissible);
  const auto p = certify(fixtures::petersen(), 0.5);
  CHECK_FALSE(p.admissible);
  CHECK(p.threshold == doctest::Approx(0.0625));
  const auto g = generate(GenSpec::random_regular(10000, 20, 1));
  const auto c = certify(g, 0.9);
  CHECK(c.report.ratio < 0.5);
  CHECK(c.threshold == doctest::Approx(std::pow(0.9, 20.0 / 9.0)));
  CHECK(c.admissible);
}
