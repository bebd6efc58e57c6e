#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ndl/graph.hpp"

// Data-parallel inner loops. Each kernel exists twice: a plain serial
// reference used by the tests, and an OpenMP version used by the library.
// Both produce identical results (bit-for-bit, except dot() whose rounding
// differs from the serial sum but is fixed regardless of thread count).
namespace ndl::kernels {

inline constexpr vertex_t kNoLabel = std::numeric_limits<vertex_t>::max();

namespace serial {

// y = A x.
void spmv(const RegularGraph& g, std::span<const double> x, std::span<double> y);

double dot(std::span<const double> a, std::span<const double> b);

// member[v] = 1 with probability p, keyed by (seed, v).
std::vector<std::uint8_t> sample_membership(std::size_t n, double p, std::uint64_t seed);

// labels[v] = smallest vertex id in v's component of G[member], or kNoLabel.
std::vector<vertex_t> label_components(const RegularGraph& g, std::span<const std::uint8_t> member);

}  // namespace serial

namespace omp {

void spmv(const RegularGraph& g, std::span<const double> x, std::span<double> y);

// Summed over fixed-size blocks, then blocks combined in order.
double dot(std::span<const double> a, std::span<const double> b);

std::vector<std::uint8_t> sample_membership(std::size_t n, double p, std::uint64_t seed);

// Lock-free union-find (CAS hooking of the larger root under the smaller).
std::vector<vertex_t> label_components(const RegularGraph& g, std::span<const std::uint8_t> member);

}  // namespace omp

}  // namespace ndl::kernels
