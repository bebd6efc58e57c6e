#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ndl/census.hpp"
#include "ndl/graph.hpp"
#include "ndl/percolation.hpp"
#include "ndl/spectral.hpp"

namespace ndl {

struct Violation {
  std::string witness;
  double measured = 0.0;
  double bound = 0.0;
};

/// Outcome of one checker run. At most kMaxWitnesses violations are kept;
/// violation_count counts all of them.
struct ViolationReport {
  static constexpr std::size_t kMaxWitnesses = 64;

  std::string checker;
  std::size_t instances_checked = 0;
  std::size_t instances_skipped = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;
  std::map<std::string, double> stats;
  bool pass = true;

  void add(Violation v);
  double violation_rate() const noexcept;
};

/// Ids accepted by run_checker and the `verify` subcommand.
inline constexpr const char* kCheckerIds[] = {"mixing",    "degree_concentration", "expansion_window",
                                               "blowup_pairs", "stream",             "giant_expansion"};

/// Largest eigenvalue error the report admits: lambda plus its worst residual.
double inflated_lambda(const SpectrumReport& report);

/// |e(B,C) - d|B||C|/n| <= lambda sqrt(|B||C|) for one fixed pair.
ViolationReport check_mixing(const RegularGraph& g, const SpectrumReport& report, const VertexSet& b,
                             const VertexSet& c);

/// The same inequality on `pairs` random pairs (B, C), each set uniform among
/// subsets of a uniform random size in [0, n].
ViolationReport check_mixing(const RegularGraph& g, const SpectrumReport& report, std::size_t pairs,
                             std::uint64_t seed);

/// Heavy set {v : d(v,B) >= (1+alpha)|B|d/n} and light set
/// {v : d(v,B) <= (1-alpha)|B|d/n} each have at most (2/alpha^2)(lambda/d)^2 n
/// vertices. Throws PreconditionError if |B| < n/2, DomainError unless alpha > 0.
ViolationReport check_degree_concentration(const RegularGraph& g, const SpectrumReport& report,
                                           const VertexSet& b, double alpha);

/// Admissible sizes for the expansion window: ceil(alpha n/d) .. floor(n/(3d)).
struct SizeWindow {
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool empty() const noexcept { return lo > hi; }
};
SizeWindow expansion_window_sizes(std::size_t n, std::size_t d, double alpha);

/// External neighborhood of S against (1 -+ 2 alpha) n (1 - exp(-d|S|/n)).
struct ExpansionCheck {
  std::size_t size = 0;
  std::size_t neighborhood = 0;
  double lower = 0.0;
  double upper = 0.0;
  bool over() const noexcept { return static_cast<double>(neighborhood) > upper; }
  bool under() const noexcept { return static_cast<double>(neighborhood) < lower; }
};
ExpansionCheck classify_expansion(const RegularGraph& g, std::span<const vertex_t> s, double alpha);

/// Samples `subsets` uniform m-subsets of V_p, m uniform over the window
/// (clipped to |V_p|), and flags over- and under-expanding ones.
/// Throws ConfigError if the size window is empty, PreconditionError if V_p is
/// smaller than the window's lower end.
ViolationReport check_expansion_window(const RegularGraph& g, const PercolationSample& sample,
                                       double alpha, std::size_t subsets, std::uint64_t seed);

/// On a blow-up G0(s): unions of whole blocks S have |N_G(S)| <= |S| d / s.
/// Samples `subsets` random block sets of random sizes. Throws UsageError if g
/// is not a blow-up.
ViolationReport check_blowup_pairs(const RegularGraph& g, std::size_t subsets, std::uint64_t seed);

enum class StreamMode { sub, super };

/// Scans a realized 0/1 stream of length n:
///  ones   - at most 2n/d ones (both modes);
///  window - sub mode: no interval of length k d starting at a one holds >= k
///           ones, k = ceil((4/eps^2) ln(n/d)), intervals clipped at n;
///  drift  - super mode: |sum_{i<=t} X_i - (1+eps)t/d| <= eps^2 c n/d at every
///           t in [0, n) with X_{t+1} = 1.
ViolationReport check_stream_properties(std::span<const std::uint8_t> coins, double epsilon, double d,
                                        StreamMode mode, double c = 1.0);

/// Grows `samples` connected subsets of L1 inside G[V_p] by BFS from random
/// roots to random sizes in [16 alpha n/d, (x - 9 alpha) n/d] and records the
/// smallest external neighborhood within G[V_p]. Passes iff that minimum is at
/// least beta_test alpha^2 / ln(1/alpha) n/d. A sampled necessary check, not a
/// certificate over all subsets.
/// Throws ConfigError if the window is empty, PreconditionError if L1 is
/// below the giant threshold (x/2) n/d.
ViolationReport check_giant_expansion(const RegularGraph& g, const PercolationSample& sample,
                                      double epsilon, double alpha, std::size_t samples,
                                      double beta_test, std::uint64_t seed);

}  // namespace ndl
