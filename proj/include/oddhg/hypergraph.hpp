#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddhg {

/// An edge is a strictly increasing tuple of 1-based vertex indices.
using Edge = std::vector<int>;

/// Parse failure carrying the 1-based line of the offending input.
class HgrParseError : public std::runtime_error {
 public:
  HgrParseError(const std::string& msg, int line)
      : std::runtime_error(msg + ", line " + std::to_string(line)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// r-uniform hypergraph on vertices 1..n with a canonical edge list:
/// every edge strictly increasing, edges pairwise distinct and sorted
/// lexicographically. Immutable after construction.
class Hypergraph {
 public:
  /// Canonicalizes the edge list (sorts tuples and the list). Throws
  /// std::invalid_argument on arity/range violations or duplicate edges.
  Hypergraph(int r, int n, std::vector<Edge> edges);

  int r() const { return r_; }
  int n() const { return n_; }
  long long m() const { return static_cast<long long>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool operator==(const Hypergraph&) const = default;

 private:
  int r_;
  int n_;
  std::vector<Edge> edges_;
};

/// Reads the HGR text format:
///   line 1: "r n m"
///   next m lines: r vertex indices separated by spaces
///   lines starting with '#' are comments
/// Throws HgrParseError with the offending line number.
Hypergraph parse_hypergraph(std::istream& in);
Hypergraph parse_hypergraph(const std::string& text);

/// Deterministic HGR output; parse(serialize(G)) == G.
std::string serialize_hypergraph(const Hypergraph& g);

/// Per-vertex edge counts, index 0 holding vertex 1.
std::vector<long long> degrees(const Hypergraph& g);

struct ComponentBlock {
  std::vector<int> vertices;  // original labels, ascending
  Hypergraph induced;         // relabeled 1..|vertices| preserving order
};

struct ComponentPartition {
  std::vector<ComponentBlock> blocks;  // ordered by smallest original vertex
};

/// Connected components of the vertex-edge incidence structure; isolated
/// vertices become singleton blocks.
ComponentPartition connected_components(const Hypergraph& g);

/// Vertices of g2 shifted past g1; throws on uniformity mismatch.
Hypergraph disjoint_union(const Hypergraph& g1, const Hypergraph& g2);

/// m distinct edges sampled uniformly without replacement, reproducible per
/// seed (std::mt19937_64 with rejection-based bounded draws, so results are
/// identical across platforms).
Hypergraph random_rgraph(int n, int r, long long m, std::uint64_t seed);

/// C(n, k) saturating at 2^62 to keep feasibility checks overflow-free.
long long binomial_capped(int n, int k);

}  // namespace oddhg
