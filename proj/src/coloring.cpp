#include "oddhg/coloring.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <set>

#include "oddhg/zmod.hpp"
#include "prng_util.hpp"

namespace oddhg {

namespace {

void require_even_r(const Hypergraph& g) {
  if (g.r() % 2 != 0) throw std::invalid_argument("odd-coloring machinery requires even uniformity");
}

IntMatrix incidence_matrix(const Hypergraph& g) {
  IntMatrix m(static_cast<int>(g.m()), g.n());
  for (int e = 0; e < static_cast<int>(g.m()); ++e) {
    for (int v : g.edges()[static_cast<size_t>(e)]) m.at(e, v - 1) = 1;
  }
  return m;
}

}  // namespace

int WeakColoring::num_classes() const {
  std::set<int> distinct(classes.begin(), classes.end());
  return static_cast<int>(distinct.size());
}

bool check_odd_coloring(const Hypergraph& g, const OddColoring& c) {
  require_even_r(g);
  if (static_cast<int>(c.phi.size()) != g.n()) throw std::invalid_argument("coloring length mismatch");
  const int r = g.r();
  for (int v : c.phi) {
    if (v < 1 || v > r) throw std::invalid_argument("coloring value outside 1..r");
  }
  for (const Edge& e : g.edges()) {
    long long sum = 0;
    for (int v : e) sum += c.phi[static_cast<size_t>(v - 1)];
    if (sum % r != r / 2) return false;
  }
  return true;
}

std::optional<OddColoring> find_odd_coloring(const Hypergraph& g) {
  require_even_r(g);
  const int r = g.r();
  if (g.m() == 0) return OddColoring{std::vector<int>(static_cast<size_t>(g.n()), r)};

  const IntMatrix m = incidence_matrix(g);
  const std::vector<long long> b(static_cast<size_t>(g.m()), r / 2);
  const auto sol = solve_mod(m, b, r);
  if (!sol) return std::nullopt;

  OddColoring c;
  c.phi.reserve(static_cast<size_t>(g.n()));
  for (long long residue : sol->particular) c.phi.push_back(residue == 0 ? r : static_cast<int>(residue));
  assert(check_odd_coloring(g, c));
  return c;
}

std::optional<OddColoring> brute_force_odd_coloring(const Hypergraph& g, long long cap) {
  require_even_r(g);
  const int r = g.r();
  const int n = g.n();

  long long space = 1;
  for (int i = 0; i < n; ++i) {
    if (space > cap / r) throw std::invalid_argument("search space exceeds cap");
    space *= r;
  }
  if (space > cap) throw std::invalid_argument("search space exceeds cap");

  // Odometer over digits d_v = phi(v) - 1. Each digit bump is +1 mod r, so
  // edge sums update incrementally; Sum(phi) = Sum(d) mod r because |e| = r.
  const long long m = g.m();
  std::vector<std::vector<int>> edges_of(static_cast<size_t>(n));
  for (int e = 0; e < m; ++e) {
    for (int v : g.edges()[static_cast<size_t>(e)]) edges_of[static_cast<size_t>(v - 1)].push_back(e);
  }
  std::vector<int> digit(static_cast<size_t>(n), 0);
  std::vector<int> edge_sum(static_cast<size_t>(m), 0);
  const int target = r / 2;
  long long satisfied = (target == 0) ? m : 0;

  auto bump = [&](int v) {
    digit[static_cast<size_t>(v)] = (digit[static_cast<size_t>(v)] + 1) % r;
    for (int e : edges_of[static_cast<size_t>(v)]) {
      int& s = edge_sum[static_cast<size_t>(e)];
      if (s == target) --satisfied;
      s = (s + 1) % r;
      if (s == target) ++satisfied;
    }
  };

  for (long long it = 0;; ++it) {
    if (satisfied == m) {
      OddColoring c;
      c.phi.reserve(static_cast<size_t>(n));
      for (int d : digit) c.phi.push_back(d + 1);
      return c;
    }
    if (it + 1 == space) break;
    int pos = 0;
    while (digit[static_cast<size_t>(pos)] == r - 1) {
      bump(pos);  // wraps to 0
      ++pos;
    }
    bump(pos);
  }
  return std::nullopt;
}

bool check_odd_bipartition(const Hypergraph& g, const OddBipartition& b) {
  require_even_r(g);
  if (b.part.empty()) throw std::invalid_argument("bipartition side must be nonempty");
  std::vector<std::uint8_t> in_part(static_cast<size_t>(g.n()) + 1, 0);
  int count = 0;
  for (int v : b.part) {
    if (v < 1 || v > g.n()) throw std::invalid_argument("bipartition vertex out of range");
    if (!in_part[static_cast<size_t>(v)]) {
      in_part[static_cast<size_t>(v)] = 1;
      ++count;
    }
  }
  if (count == g.n()) throw std::invalid_argument("bipartition side must be a proper subset");
  for (const Edge& e : g.edges()) {
    int hits = 0;
    for (int v : e) hits += in_part[static_cast<size_t>(v)];
    if (hits % 2 == 0) return false;
  }
  return true;
}

std::optional<OddBipartition> find_odd_bipartition(const Hypergraph& g) {
  require_even_r(g);
  if (g.m() == 0) {
    if (g.n() < 2) return std::nullopt;  // no proper nonempty subset exists
    return OddBipartition{{1}};
  }
  std::vector<std::vector<std::uint8_t>> rows(static_cast<size_t>(g.m()),
                                              std::vector<std::uint8_t>(static_cast<size_t>(g.n()), 0));
  for (long long e = 0; e < g.m(); ++e) {
    for (int v : g.edges()[static_cast<size_t>(e)]) rows[static_cast<size_t>(e)][static_cast<size_t>(v - 1)] = 1;
  }
  const std::vector<std::uint8_t> b(static_cast<size_t>(g.m()), 1);
  const auto sol = gf2_solve(rows, b);
  if (!sol) return std::nullopt;

  OddBipartition part;
  for (int v = 1; v <= g.n(); ++v) {
    if (sol->solution[static_cast<size_t>(v - 1)]) part.part.push_back(v);
  }
  // With at least one edge and even r, the all-zero and all-one indicators
  // both fail the parity constraint, so the solution is proper and nonempty.
  assert(check_odd_bipartition(g, part));
  return part;
}

WeakColoring residue_partition(const Hypergraph& g, const OddColoring& c, int q) {
  if (q < 1) throw std::invalid_argument("q must be at least 1");
  const int r = g.r();
  const int pow2q = 1 << q;
  if (r % pow2q != 0 || (r / pow2q) % 2 == 0) throw std::invalid_argument("uniformity is not 2^q times an odd number");
  if (!check_odd_coloring(g, c)) throw std::invalid_argument("coloring invalid for graph");

  std::vector<int> label_of_residue(static_cast<size_t>(pow2q), 0);
  for (int v : c.phi) ++label_of_residue[static_cast<size_t>(v % pow2q)];
  int next = 0;
  for (int res = 0; res < pow2q; ++res) {
    label_of_residue[static_cast<size_t>(res)] = label_of_residue[static_cast<size_t>(res)] > 0 ? ++next : 0;
  }
  WeakColoring w;
  w.classes.reserve(c.phi.size());
  for (int v : c.phi) w.classes.push_back(label_of_residue[static_cast<size_t>(v % pow2q)]);
  return w;
}

bool check_weak_coloring(const Hypergraph& g, const WeakColoring& c) {
  if (static_cast<int>(c.classes.size()) != g.n()) throw std::invalid_argument("coloring length mismatch");
  for (const Edge& e : g.edges()) {
    const int first = c.classes[static_cast<size_t>(e[0] - 1)];
    bool mono = true;
    for (int v : e) {
      if (c.classes[static_cast<size_t>(v - 1)] != first) {
        mono = false;
        break;
      }
    }
    if (mono) return false;
  }
  return true;
}

namespace {

/// Interchangeable-vertex classes: u and v are twins when swapping them maps
/// the edge set to itself. Solutions can be reordered inside a class, so the
/// search may insist on nondecreasing colors along each class.
std::vector<int> twin_classes(const Hypergraph& g) {
  const int n = g.n();
  const auto& edges = g.edges();
  std::vector<std::vector<int>> edges_of(static_cast<size_t>(n));
  for (size_t e = 0; e < edges.size(); ++e) {
    for (int v : edges[e]) edges_of[static_cast<size_t>(v - 1)].push_back(static_cast<int>(e));
  }
  const auto deg = degrees(g);
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  const auto is_twin = [&](int u, int v) {  // 1-based
    if (deg[static_cast<size_t>(u - 1)] != deg[static_cast<size_t>(v - 1)]) return false;
    Edge mapped;
    for (int e : edges_of[static_cast<size_t>(u - 1)]) {
      const Edge& edge = edges[static_cast<size_t>(e)];
      if (std::binary_search(edge.begin(), edge.end(), v)) continue;  // fixed by the swap
      mapped.clear();
      for (int w : edge) mapped.push_back(w == u ? v : w);
      std::sort(mapped.begin(), mapped.end());
      if (!std::binary_search(edges.begin(), edges.end(), mapped)) return false;
    }
    return true;  // equal degrees make the reverse direction automatic
  };
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (find(u - 1) == find(v - 1)) continue;
      if (is_twin(u, v)) parent[static_cast<size_t>(std::max(find(u - 1), find(v - 1)))] = std::min(find(u - 1), find(v - 1));
    }
  }
  std::vector<int> cls(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) cls[static_cast<size_t>(v)] = find(v);
  return cls;
}

/// Backtracking k-coloring search. Deterministic: most-constrained vertex
/// first (ties by index), colors ascending, new-color symmetry cap, and
/// nondecreasing colors along twin classes.
class WeakColoringSearch {
 public:
  WeakColoringSearch(const Hypergraph& g, int k, std::chrono::steady_clock::time_point deadline,
                     const std::vector<int>& twin_class)
      : g_(g), k_(k), deadline_(deadline), n_(g.n()), r_(g.r()), twin_class_(twin_class) {
    if (k_ > 62) throw std::invalid_argument("class count beyond supported range");
    color_.assign(static_cast<size_t>(n_), 0);
    domain_.assign(static_cast<size_t>(n_), (k_ >= 63 ? ~0ULL : (1ULL << (k_ + 1)) - 2));  // bits 1..k
    edges_of_.assign(static_cast<size_t>(n_), {});
    const auto& edges = g.edges();
    edge_count_.assign(edges.size(), 0);
    edge_mono_.assign(edges.size(), 0);
    edge_live_.assign(edges.size(), 1);
    for (size_t e = 0; e < edges.size(); ++e) {
      for (int v : edges[e]) edges_of_[static_cast<size_t>(v - 1)].push_back(static_cast<int>(e));
    }
    twin_members_.assign(static_cast<size_t>(n_), {});
    for (int v = 0; v < n_; ++v) twin_members_[static_cast<size_t>(twin_class_[static_cast<size_t>(v)])].push_back(v);
    // The fresh-color cap (open at most one new class per branch) and the
    // twin ordering are each complete on their own, but their normal forms
    // can disagree; keep the cap only when every twin class is a singleton.
    value_cap_ = true;
    for (const auto& members : twin_members_) value_cap_ = value_cap_ && members.size() <= 1;
  }

  enum class Outcome { kSat, kUnsat, kTimeout };

  Outcome run() {
    const bool sat = dfs(0, 0);
    if (timed_out_) return Outcome::kTimeout;
    return sat ? Outcome::kSat : Outcome::kUnsat;
  }

  WeakColoring witness() const { return WeakColoring{color_}; }

 private:
  struct TrailEntry {
    enum Kind { kAssign, kDomain, kEdgeInc, kEdgeDead } kind;
    int index;
    std::uint64_t saved;  // domain bits / packed (count, mono)
  };

  bool time_up() {
    if ((++nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
    return timed_out_;
  }

  bool assign(int v, int c, std::vector<TrailEntry>& trail) {
    trail.push_back({TrailEntry::kAssign, v, 0});
    color_[static_cast<size_t>(v)] = c;
    for (int e : edges_of_[static_cast<size_t>(v)]) {
      if (!edge_live_[static_cast<size_t>(e)]) continue;
      const int cnt = edge_count_[static_cast<size_t>(e)];
      const int mono = edge_mono_[static_cast<size_t>(e)];
      if (cnt > 0 && mono != c) {
        // Two classes present: this edge can never go monochromatic.
        trail.push_back({TrailEntry::kEdgeDead, e, 0});
        edge_live_[static_cast<size_t>(e)] = 0;
        continue;
      }
      trail.push_back({TrailEntry::kEdgeInc, e,
                       (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cnt)) << 32) |
                           static_cast<std::uint32_t>(mono)});
      edge_count_[static_cast<size_t>(e)] = cnt + 1;
      edge_mono_[static_cast<size_t>(e)] = c;
      if (cnt + 1 == r_) return false;  // monochromatic edge
      if (cnt + 1 == r_ - 1) {
        // One vertex left: bar it from the shared class.
        for (int u : g_.edges()[static_cast<size_t>(e)]) {
          const int ui = u - 1;
          if (color_[static_cast<size_t>(ui)] != 0) continue;
          const std::uint64_t bit = 1ULL << c;
          if (domain_[static_cast<size_t>(ui)] & bit) {
            trail.push_back({TrailEntry::kDomain, ui, domain_[static_cast<size_t>(ui)]});
            domain_[static_cast<size_t>(ui)] &= ~bit;
          }
          break;
        }
      }
    }
    return true;
  }

  void undo(std::vector<TrailEntry>& trail, size_t mark) {
    while (trail.size() > mark) {
      const TrailEntry t = trail.back();
      trail.pop_back();
      switch (t.kind) {
        case TrailEntry::kAssign:
          color_[static_cast<size_t>(t.index)] = 0;
          break;
        case TrailEntry::kDomain:
          domain_[static_cast<size_t>(t.index)] = t.saved;
          break;
        case TrailEntry::kEdgeInc:
          edge_count_[static_cast<size_t>(t.index)] = static_cast<int>(t.saved >> 32);
          edge_mono_[static_cast<size_t>(t.index)] = static_cast<int>(t.saved & 0xffffffffULL);
          break;
        case TrailEntry::kEdgeDead:
          edge_live_[static_cast<size_t>(t.index)] = 1;
          break;
      }
    }
  }

  bool dfs(int assigned, int max_used) {
    if (assigned == n_) return true;
    if (time_up()) return false;

    int best = -1;
    int best_size = k_ + 1;
    for (int v = 0; v < n_; ++v) {
      if (color_[static_cast<size_t>(v)] != 0) continue;
      const int size = std::popcount(domain_[static_cast<size_t>(v)]);
      if (size < best_size) {
        best_size = size;
        best = v;
        if (size == 0) break;
      }
    }
    if (best_size == 0) return false;

    // Twin ordering: colors along a class must be nondecreasing by index.
    int lo = 1;
    int hi = k_;
    for (int u : twin_members_[static_cast<size_t>(twin_class_[static_cast<size_t>(best)])]) {
      if (u == best || color_[static_cast<size_t>(u)] == 0) continue;
      if (u < best) {
        lo = std::max(lo, color_[static_cast<size_t>(u)]);
      } else {
        hi = std::min(hi, color_[static_cast<size_t>(u)]);
      }
    }

    const int cap = value_cap_ ? std::min({k_, max_used + 1, hi}) : std::min(k_, hi);
    for (int c = lo; c <= cap; ++c) {
      if (!(domain_[static_cast<size_t>(best)] & (1ULL << c))) continue;
      const size_t mark = trail_.size();
      if (assign(best, c, trail_)) {
        if (dfs(assigned + 1, std::max(max_used, c))) return true;
        if (timed_out_) {
          undo(trail_, mark);
          return false;
        }
      }
      undo(trail_, mark);
    }
    return false;
  }

  const Hypergraph& g_;
  int k_;
  std::chrono::steady_clock::time_point deadline_;
  int n_;
  int r_;
  const std::vector<int>& twin_class_;
  std::vector<int> color_;
  std::vector<std::uint64_t> domain_;
  std::vector<std::vector<int>> edges_of_;
  std::vector<int> edge_count_;
  std::vector<int> edge_mono_;
  std::vector<std::uint8_t> edge_live_;
  std::vector<TrailEntry> trail_;
  std::vector<std::vector<int>> twin_members_;
  bool value_cap_ = true;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

WeakColoring greedy_weak_coloring(const Hypergraph& g) {
  const int n = g.n();
  std::vector<std::vector<int>> edges_of(static_cast<size_t>(n));
  const auto& edges = g.edges();
  for (size_t e = 0; e < edges.size(); ++e) {
    for (int v : edges[e]) edges_of[static_cast<size_t>(v - 1)].push_back(static_cast<int>(e));
  }
  std::vector<int> classes(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    std::uint64_t forbidden = 0;
    for (int e : edges_of[static_cast<size_t>(v)]) {
      int shared = 0;
      bool mono = true;
      int assigned = 0;
      for (int u : edges[static_cast<size_t>(e)]) {
        const int cu = classes[static_cast<size_t>(u - 1)];
        if (cu == 0) continue;
        ++assigned;
        if (shared == 0) shared = cu;
        if (cu != shared) mono = false;
      }
      if (mono && assigned == g.r() - 1 && shared >= 1 && shared <= 62) forbidden |= 1ULL << shared;
    }
    int c = 1;
    while (forbidden & (1ULL << c)) ++c;
    classes[static_cast<size_t>(v)] = c;
  }
  return WeakColoring{classes};
}

}  // namespace

ChromaticResult chromatic_number(const Hypergraph& g, double time_budget_seconds) {
  ChromaticResult res;
  if (g.m() == 0) {
    res.lower = res.upper = 1;
    res.exact = true;
    res.witness = WeakColoring{std::vector<int>(static_cast<size_t>(g.n()), 1)};
    return res;
  }
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(time_budget_seconds));

  WeakColoring greedy = greedy_weak_coloring(g);
  assert(check_weak_coloring(g, greedy));
  int upper = greedy.num_classes();
  res.witness = std::move(greedy);

  const std::vector<int> twins = twin_classes(g);

  // An edge inside one class rules out k = 1.
  for (int k = 2; k < upper; ++k) {
    WeakColoringSearch search(g, k, deadline, twins);
    const auto outcome = search.run();
    if (outcome == WeakColoringSearch::Outcome::kSat) {
      res.lower = res.upper = k;
      res.exact = true;
      res.witness = search.witness();
      return res;
    }
    if (outcome == WeakColoringSearch::Outcome::kTimeout) {
      res.lower = k;
      res.upper = upper;
      res.timed_out = true;
      return res;
    }
  }
  res.lower = res.upper = upper;
  res.exact = true;
  return res;
}

namespace {

void enumerate_subsets(const std::vector<int>& pool, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
  const int n = static_cast<int>(pool.size());
  while (true) {
    std::vector<int> subset;
    subset.reserve(static_cast<size_t>(k));
    for (int i : idx) subset.push_back(pool[static_cast<size_t>(i)]);
    out.push_back(std::move(subset));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - (k - i)) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

std::vector<int> sample_subset(const std::vector<int>& pool, int k, std::mt19937_64& rng) {
  std::vector<int> copy = pool;
  std::vector<int> out;
  out.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(detail::bounded(rng, copy.size() - static_cast<size_t>(i)));
    std::swap(copy[static_cast<size_t>(i)], copy[static_cast<size_t>(j)]);
    out.push_back(copy[static_cast<size_t>(i)]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Construction build_construction(const ConstructionParams& p) {
  if (p.q < 1 || p.t < 0) throw std::invalid_argument("require q >= 1 and t >= 0");
  const int blocks_n = 1 << p.q;
  const long long r_ll = static_cast<long long>(blocks_n) * (2 * p.t + 1);
  if (r_ll > 1000) throw std::invalid_argument("uniformity too large");
  const int r = static_cast<int>(r_ll);
  const int min_block = r * (blocks_n - 1);

  std::vector<int> sizes = p.block_sizes;
  if (sizes.empty()) sizes.assign(static_cast<size_t>(blocks_n), min_block);
  if (static_cast<int>(sizes.size()) != blocks_n) throw std::invalid_argument("expected one size per block");
  for (int s : sizes) {
    if (s < min_block) throw std::invalid_argument("block size below r(2^q - 1)");
  }

  Construction out{Hypergraph(2, 1, {}), {}, {}, {}};
  int start = 0;
  long long n = 0;
  for (int s : sizes) n += s;
  std::vector<std::vector<int>> blocks;
  for (int s : sizes) {
    std::vector<int> blk(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) blk[static_cast<size_t>(i)] = start + i + 1;
    start += s;
    blocks.push_back(std::move(blk));
  }

  std::vector<Edge> edges;
  std::vector<PairCoefficient> b_table;
  for (int i = 1; i <= blocks_n; ++i) {
    for (int j = i + 1; j <= blocks_n; ++j) {
      const int diff = j - i;
      const int pij = std::countr_zero(static_cast<unsigned>(diff));
      const int b = (1 << (p.q - pij - 1)) * (2 * p.t + 1);
      b_table.push_back({i, j, b});
      const std::vector<int>& vi = blocks[static_cast<size_t>(i - 1)];
      const std::vector<int>& vj = blocks[static_cast<size_t>(j - 1)];
      const long long count = binomial_capped(static_cast<int>(vi.size()), r - b) *
                              binomial_capped(static_cast<int>(vj.size()), b);
      if (p.sample_cap > 0 && count > p.sample_cap) {
        std::mt19937_64 rng(p.seed ^ (static_cast<std::uint64_t>(i) << 32) ^ static_cast<std::uint64_t>(j));
        std::set<Edge> picked;
        while (static_cast<long long>(picked.size()) < p.sample_cap) {
          std::vector<int> left = sample_subset(vi, r - b, rng);
          std::vector<int> right = sample_subset(vj, b, rng);
          left.insert(left.end(), right.begin(), right.end());
          picked.insert(std::move(left));
        }
        for (const Edge& e : picked) edges.push_back(e);
      } else {
        std::vector<std::vector<int>> lefts, rights;
        enumerate_subsets(vi, r - b, lefts);
        enumerate_subsets(vj, b, rights);
        for (const auto& l : lefts) {
          for (const auto& rt : rights) {
            Edge e = l;
            e.insert(e.end(), rt.begin(), rt.end());
            edges.push_back(std::move(e));
          }
        }
      }
    }
  }

  OddColoring phi;
  phi.phi.assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < blocks_n; ++i) {
    for (int v : blocks[static_cast<size_t>(i)]) phi.phi[static_cast<size_t>(v - 1)] = i + 1;
  }

  out.graph = Hypergraph(r, static_cast<int>(n), std::move(edges));
  out.blocks = std::move(blocks);
  out.coloring = std::move(phi);
  out.b_table = std::move(b_table);
  assert(check_odd_coloring(out.graph, out.coloring));
  return out;
}

}  // namespace oddhg
