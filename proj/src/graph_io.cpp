#include "ndl/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ndl/errors.hpp"

namespace ndl {

namespace {

constexpr std::string_view kMagic = "ndl-graph 1";

// Parses exactly two unsigned integers separated by one space.
bool parse_pair(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
  const char* first = line.data();
  const char* last = line.data() + line.size();
  auto r1 = std::from_chars(first, last, a);
  if (r1.ec != std::errc{} || r1.ptr == last || *r1.ptr != ' ') return false;
  auto r2 = std::from_chars(r1.ptr + 1, last, b);
  return r2.ec == std::errc{} && r2.ptr == last;
}

}  // namespace

RegularGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') throw ParseError(lineno, "CR line ending");
    return true;
  };

  if (!next() || line != kMagic) throw ParseError(1, "expected header \"ndl-graph 1\"");
  std::uint64_t n = 0;
  std::uint64_t d = 0;
  if (!next() || !parse_pair(line, n, d)) throw ParseError(lineno, "expected \"<n> <d>\"");
  if (n == 0 || d == 0 || d >= n) throw ParseError(lineno, "need 1 <= d < n");
  if ((n * d) % 2 != 0) throw ParseError(lineno, "n*d must be even");

  const std::uint64_t m = n * d / 2;
  std::vector<Edge> edges;
  edges.reserve(m);
  while (next()) {
    if (line.empty()) throw ParseError(lineno, "empty line");
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!parse_pair(line, u, v)) throw ParseError(lineno, "expected \"<u> <v>\"");
    if (u >= n || v >= n) throw ParseError(lineno, "vertex id out of range");
    if (edges.size() == m) throw ParseError(lineno, "more than n*d/2 edge lines");
    edges.emplace_back(static_cast<vertex_t>(u), static_cast<vertex_t>(v));
  }
  if (edges.size() != m) {
    throw ParseError(lineno, "expected " + std::to_string(m) + " edge lines, found " +
                                 std::to_string(edges.size()));
  }
  return RegularGraph::from_edges(n, d, edges);
}

RegularGraph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_graph(in);
}

void write_graph(std::ostream& out, const RegularGraph& g) {
  std::string buf;
  buf.reserve(32 + g.num_edges() * 14);
  buf.append(kMagic).push_back('\n');
  buf.append(std::to_string(g.num_vertices())).push_back(' ');
  buf.append(std::to_string(g.degree())).push_back('\n');
  for (const auto& [u, v] : g.edges()) {
    buf.append(std::to_string(u)).push_back(' ');
    buf.append(std::to_string(v)).push_back('\n');
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_graph(const std::filesystem::path& path, const RegularGraph& g) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  write_graph(out, g);
  if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace ndl
