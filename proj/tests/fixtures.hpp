#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "ndl/graph.hpp"

namespace fixtures {

inline ndl::RegularGraph complete(std::size_t n) {
  std::vector<ndl::Edge> e;
  for (ndl::vertex_t u = 0; u < n; ++u) {
    for (ndl::vertex_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return ndl::RegularGraph::from_edges(n, n - 1, e);
}

inline ndl::RegularGraph cycle(std::size_t n) {
  std::vector<ndl::Edge> e;
  for (ndl::vertex_t u = 0; u < n; ++u) e.emplace_back(u, static_cast<ndl::vertex_t>((u + 1) % n));
  return ndl::RegularGraph::from_edges(n, 2, e);
}

// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline ndl::RegularGraph petersen() {
  std::vector<ndl::Edge> e;
  for (ndl::vertex_t i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
    e.emplace_back(i, 5 + i);
  }
  return ndl::RegularGraph::from_edges(10, 3, e);
}

inline ndl::VertexSet set_of(std::size_t n, std::vector<ndl::vertex_t> members) {
  return ndl::VertexSet::from_list(n, members);
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ndl_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace fixtures
