#pragma once

#include <filesystem>
#include <iosfwd>

#include "ndl/graph.hpp"

namespace ndl {

// Text format, LF newlines, single-space separators:
//   ndl-graph 1
//   <n> <d>
//   <u> <v>      (n*d/2 lines, u < v, lexicographic order)
// The reader accepts edges in any order or orientation; the writer always
// emits the canonical form, so write(read(write(g))) is byte-stable.

RegularGraph read_graph(std::istream& in);
RegularGraph read_graph(const std::filesystem::path& path);

void write_graph(std::ostream& out, const RegularGraph& g);
void write_graph(const std::filesystem::path& path, const RegularGraph& g);

}  // namespace ndl
