// Serial reference kernels against their OpenMP versions on one random
// regular graph. Usage: ndl_bench [n] [d] [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ndl/generators.hpp"
#include "ndl/kernels.hpp"

namespace {

template <class F>
double best_ms(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-18s serial %9.3f ms   omp %9.3f ms   speedup %5.2fx   %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  const std::size_t d = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 20;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 5;

  namespace ser = ndl::kernels::serial;
  namespace par = ndl::kernels::omp;

  const auto g = ndl::generate(ndl::GenSpec::random_regular(n, d, 7));
  std::printf("random regular n=%zu d=%zu, %d threads, best of %d\n", n, d, omp_get_max_threads(), repeats);

  std::vector<double> x(n), y1(n), y2(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i % 97) - 48.0;
  const double t_spmv_s = best_ms(repeats, [&] { ser::spmv(g, x, y1); });
  const double t_spmv_p = best_ms(repeats, [&] { par::spmv(g, x, y2); });
  report("spmv", t_spmv_s, t_spmv_p, y1 == y2);

  double d1 = 0.0, d2 = 0.0;
  const double t_dot_s = best_ms(repeats, [&] { d1 = ser::dot(x, y1); });
  const double t_dot_p = best_ms(repeats, [&] { d2 = par::dot(x, y1); });
  report("dot", t_dot_s, t_dot_p, std::abs(d1 - d2) <= 1e-9 * std::abs(d1));

  const double p = 1.2 / static_cast<double>(d);
  std::vector<std::uint8_t> m1, m2;
  const double t_samp_s = best_ms(repeats, [&] { m1 = ser::sample_membership(n, p, 11); });
  const double t_samp_p = best_ms(repeats, [&] { m2 = par::sample_membership(n, p, 11); });
  report("sample_membership", t_samp_s, t_samp_p, m1 == m2);

  std::vector<ndl::vertex_t> l1, l2;
  const double t_cc_s = best_ms(repeats, [&] { l1 = ser::label_components(g, m1); });
  const double t_cc_p = best_ms(repeats, [&] { l2 = par::label_components(g, m1); });
  report("label_components", t_cc_s, t_cc_p, l1 == l2);
  return 0;
}
