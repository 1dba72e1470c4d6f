#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oddhg/hypergraph.hpp"

namespace oddhg {

/// Vertex labeling phi: [n] -> [r]; valid when every edge's label sum is
/// r/2 mod r.
struct OddColoring {
  std::vector<int> phi;
};

/// Proper nonempty vertex subset meeting every edge an odd number of times.
struct OddBipartition {
  std::vector<int> part;  // ascending vertex ids
};

/// Vertex classes 1..k with no monochromatic edge.
struct WeakColoring {
  std::vector<int> classes;
  int num_classes() const;
};

bool check_odd_coloring(const Hypergraph& g, const OddColoring& c);

/// Reduces to the 0/1 incidence system over Z_r and solves it exactly.
/// Empty optional means no odd-coloring exists. Requires even r.
std::optional<OddColoring> find_odd_coloring(const Hypergraph& g);

/// Exhaustive oracle over all r^n labelings (incremental odometer scan).
/// Throws when r^n exceeds cap.
std::optional<OddColoring> brute_force_odd_coloring(const Hypergraph& g, long long cap);

bool check_odd_bipartition(const Hypergraph& g, const OddBipartition& b);

/// GF(2) incidence solve; empty optional means the graph is not
/// odd-bipartite. Requires even r.
std::optional<OddBipartition> find_odd_bipartition(const Hypergraph& g);

/// Groups vertices by phi mod 2^q; drops empty groups. The result is a valid
/// weak coloring with at most 2^q classes whenever c is a valid odd-coloring
/// and r = 2^q * odd.
WeakColoring residue_partition(const Hypergraph& g, const OddColoring& c, int q);

bool check_weak_coloring(const Hypergraph& g, const WeakColoring& c);

struct ChromaticResult {
  int lower = 1;
  int upper = 1;
  bool exact = false;
  bool timed_out = false;
  std::optional<WeakColoring> witness;  // valid coloring with `upper` classes
};

/// Exact weak chromatic number by iterative deepening: backtracking with
/// most-constrained-vertex ordering and forced-vertex propagation (an edge
/// with r-1 vertices in one class bars that class from the last vertex).
/// On timeout returns the best bracket instead of an exact value.
ChromaticResult chromatic_number(const Hypergraph& g, double time_budget_seconds);

/// Parameters of the block family: r = 2^q (2t+1), one block per label
/// 1..2^q, each of size >= r(2^q - 1). Empty block_sizes selects the minimal
/// equal sizes. sample_cap > 0 keeps at most that many edges per block pair
/// (full enumeration otherwise).
struct ConstructionParams {
  int q = 1;
  int t = 0;
  std::vector<int> block_sizes;
  long long sample_cap = 0;
  std::uint64_t seed = 0;
};

struct PairCoefficient {
  int i = 0;
  int j = 0;
  int b = 0;  // vertices the (i,j) edges take from block j
};

struct Construction {
  Hypergraph graph;
  std::vector<std::vector<int>> blocks;   // vertex ids per block, ascending
  OddColoring coloring;                   // phi(v) = block index of v
  std::vector<PairCoefficient> b_table;
};

/// Builds the block family whose edges between blocks i < j take exactly
/// b_{i,j} vertices from block j and r - b_{i,j} from block i, together with
/// its canonical block coloring.
Construction build_construction(const ConstructionParams& p);

}  // namespace oddhg
