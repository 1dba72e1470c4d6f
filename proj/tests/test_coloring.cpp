#include <doctest.h>

#include <random>
#include <set>
#include <tuple>

#include "oddhg/coloring.hpp"
#include "test_util.hpp"

using namespace oddhg;
using testutil::complete_rgraph;
using testutil::single_edge4;

TEST_CASE("check_odd_coloring on the single edge") {
  const Hypergraph g = single_edge4();
  CHECK(check_odd_coloring(g, {{1, 1, 2, 2}}));   // sum 6 = 2 (mod 4)
  CHECK_FALSE(check_odd_coloring(g, {{1, 1, 1, 1}}));  // sum 4 = 0
  CHECK_THROWS_AS(check_odd_coloring(g, {{1, 1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(check_odd_coloring(Hypergraph(3, 3, {{1, 2, 3}}), {{1, 1, 1}}), std::invalid_argument);
}

TEST_CASE("find_odd_coloring on the single edge") {
  const auto c = find_odd_coloring(single_edge4());
  REQUIRE(c.has_value());
  CHECK(check_odd_coloring(single_edge4(), *c));
  CHECK(c->phi == std::vector<int>{2, 4, 4, 4});  // residues (2,0,0,0), 0 mapped to r
}

TEST_CASE("complete graphs without odd-colorings") {
  // Verified independently by exhausting all assignments.
  const Hypergraph k54 = complete_rgraph(5, 4);
  CHECK_FALSE(brute_force_odd_coloring(k54, 1'000'000).has_value());
  CHECK_FALSE(find_odd_coloring(k54).has_value());
  CHECK_FALSE(find_odd_coloring(complete_rgraph(7, 6)).has_value());
}

TEST_CASE("brute force agrees with the solver") {
  CHECK(brute_force_odd_coloring(single_edge4(), 1'000'000).has_value());
  CHECK_THROWS_AS(brute_force_odd_coloring(complete_rgraph(12, 4), 1'000'000), std::invalid_argument);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Hypergraph g = random_rgraph(7, 4, 1 + seed % 6, seed);
    const auto fast = find_odd_coloring(g);
    const auto slow = brute_force_odd_coloring(g, 1'000'000);
    CHECK(fast.has_value() == slow.has_value());
    if (fast) CHECK(check_odd_coloring(g, *fast));
    if (slow) CHECK(check_odd_coloring(g, *slow));
  }
}

TEST_CASE("edgeless graphs are vacuously odd-colorable") {
  const Hypergraph g(4, 3, {});
  const auto c = find_odd_coloring(g);
  REQUIRE(c.has_value());
  CHECK(c->phi == std::vector<int>{4, 4, 4});
}

TEST_CASE("check_odd_bipartition") {
  const Hypergraph g = single_edge4();
  CHECK(check_odd_bipartition(g, {{1}}));
  CHECK_FALSE(check_odd_bipartition(g, {{1, 2}}));
  CHECK(check_odd_bipartition(g, {{1, 2, 3}}));
  CHECK_THROWS_AS(check_odd_bipartition(g, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(check_odd_bipartition(g, {{1, 2, 3, 4}}), std::invalid_argument);
}

TEST_CASE("find_odd_bipartition") {
  const auto b = find_odd_bipartition(single_edge4());
  REQUIRE(b.has_value());
  CHECK(check_odd_bipartition(single_edge4(), *b));

  CHECK_FALSE(find_odd_bipartition(complete_rgraph(7, 6)).has_value());

  const Hypergraph pair = disjoint_union(single_edge4(), single_edge4());
  const auto bp = find_odd_bipartition(pair);
  REQUIRE(bp.has_value());
  CHECK(check_odd_bipartition(pair, *bp));
}

TEST_CASE("odd-bipartite implies odd-colorable") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Hypergraph g = random_rgraph(8, 4, 1 + seed % 7, seed);
    const auto b = find_odd_bipartition(g);
    if (!b) continue;
    CHECK(find_odd_coloring(g).has_value());
  }
}

TEST_CASE("for r = 2 mod 4 odd-colorable iff odd-bipartite") {
  int seen = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Hypergraph g = random_rgraph(9, 6, 1 + seed % 5, seed);
    const bool colorable = find_odd_coloring(g).has_value();
    const bool bipartite = find_odd_bipartition(g).has_value();
    CHECK(colorable == bipartite);
    seen += colorable ? 1 : 0;
  }
  CHECK(seen > 0);  // the suite exercises both outcomes
}

TEST_CASE("residue_partition on the single edge") {
  const Hypergraph g = single_edge4();
  const WeakColoring w = residue_partition(g, {{1, 1, 2, 2}}, 2);
  CHECK(w.classes == std::vector<int>{1, 1, 2, 2});
  CHECK(check_weak_coloring(g, w));
  CHECK_THROWS_AS(residue_partition(g, {{1, 1, 1, 1}}, 2), std::invalid_argument);
}

TEST_CASE("residue_partition of a 2-graph coloring recovers the bipartition") {
  const Hypergraph path(2, 3, {{1, 2}, {2, 3}});
  const OddColoring c{{1, 2, 1}};  // sums 3 = 1 (mod 2)
  REQUIRE(check_odd_coloring(path, c));
  const WeakColoring w = residue_partition(path, c, 1);
  CHECK(w.num_classes() == 2);
  CHECK(check_weak_coloring(path, w));
}

TEST_CASE("check_weak_coloring") {
  const Hypergraph g = single_edge4();
  CHECK(check_weak_coloring(g, {{1, 1, 1, 2}}));
  CHECK_FALSE(check_weak_coloring(g, {{1, 1, 1, 1}}));
  CHECK(check_weak_coloring(complete_rgraph(5, 4), {{1, 1, 1, 2, 2}}));
}

TEST_CASE("chromatic number of small graphs") {
  const ChromaticResult single = chromatic_number(single_edge4(), 10.0);
  CHECK(single.exact);
  CHECK(single.upper == 2);

  const ChromaticResult k54 = chromatic_number(complete_rgraph(5, 4), 10.0);
  CHECK(k54.exact);
  CHECK(k54.upper == 2);
  REQUIRE(k54.witness.has_value());
  CHECK(check_weak_coloring(complete_rgraph(5, 4), *k54.witness));

  const ChromaticResult edgeless = chromatic_number(Hypergraph(4, 5, {}), 10.0);
  CHECK(edgeless.exact);
  CHECK(edgeless.upper == 1);
}

namespace {

/// Exhaustive chromatic oracle: least k admitting a weak coloring, by
/// enumerating all k^n class maps.
int chromatic_by_enumeration(const Hypergraph& g) {
  if (g.m() == 0) return 1;
  for (int k = 2; k <= g.n(); ++k) {
    std::vector<int> classes(static_cast<size_t>(g.n()), 1);
    for (;;) {
      if (check_weak_coloring(g, WeakColoring{classes})) return k;
      int p = 0;
      while (p < g.n() && classes[static_cast<size_t>(p)] == k) {
        classes[static_cast<size_t>(p)] = 1;
        ++p;
      }
      if (p == g.n()) break;
      ++classes[static_cast<size_t>(p)];
    }
  }
  return g.n();
}

}  // namespace

TEST_CASE("chromatic solver agrees with exhaustive enumeration") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Hypergraph g = random_rgraph(7, 3, 2 + seed % 9, seed);
    const ChromaticResult res = chromatic_number(g, 30.0);
    REQUIRE(res.exact);
    CHECK(res.upper == chromatic_by_enumeration(g));
  }
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Hypergraph g = random_rgraph(7, 2, 3 + seed % 10, seed);  // ordinary graphs
    const ChromaticResult res = chromatic_number(g, 30.0);
    REQUIRE(res.exact);
    CHECK(res.upper == chromatic_by_enumeration(g));
  }
}

TEST_CASE("chromatic solver stays exact on twin-heavy blowup graphs") {
  // One vertex class per pattern vertex; every edge picks one member from
  // each class of a pattern edge, so class members are interchangeable.
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 12; ++trial) {
    const int pattern_n = 3 + static_cast<int>(rng() % 2);
    std::vector<int> sizes(static_cast<size_t>(pattern_n));
    int n = 0;
    for (auto& s : sizes) {
      s = 1 + static_cast<int>(rng() % 3);
      n += s;
    }
    if (n > 9) continue;
    std::vector<int> offset(static_cast<size_t>(pattern_n), 0);
    for (int i = 1; i < pattern_n; ++i) offset[static_cast<size_t>(i)] = offset[static_cast<size_t>(i - 1)] + sizes[static_cast<size_t>(i - 1)];

    std::vector<Edge> edges;
    for (int a = 0; a < pattern_n; ++a) {
      for (int b = a + 1; b < pattern_n; ++b) {
        if (rng() % 2 == 0) continue;
        for (int x = 0; x < sizes[static_cast<size_t>(a)]; ++x) {
          for (int y = 0; y < sizes[static_cast<size_t>(b)]; ++y) {
            edges.push_back({offset[static_cast<size_t>(a)] + x + 1, offset[static_cast<size_t>(b)] + y + 1});
          }
        }
      }
    }
    if (edges.empty()) continue;
    const Hypergraph g(2, n, std::move(edges));
    const ChromaticResult res = chromatic_number(g, 30.0);
    REQUIRE(res.exact);
    CHECK(res.upper == chromatic_by_enumeration(g));
  }

  // 3-uniform blowups, some with extra edges that break a few twin pairs.
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<int> sizes{2, static_cast<int>(1 + rng() % 3), static_cast<int>(1 + rng() % 3)};
    const int n = sizes[0] + sizes[1] + sizes[2];
    std::vector<int> offset{0, sizes[0], sizes[0] + sizes[1]};
    std::vector<Edge> edges;
    for (int x = 0; x < sizes[0]; ++x) {
      for (int y = 0; y < sizes[1]; ++y) {
        for (int z = 0; z < sizes[2]; ++z) {
          edges.push_back({offset[0] + x + 1, offset[1] + y + 1, offset[2] + z + 1});
        }
      }
    }
    if (trial % 2 == 1 && n >= 4) {
      Edge extra{1, 2, 3};  // inside the first classes, breaking their symmetry
      std::sort(extra.begin(), extra.end());
      if (std::find(edges.begin(), edges.end(), extra) == edges.end()) edges.push_back(extra);
    }
    const Hypergraph g(3, n, std::move(edges));
    const ChromaticResult res = chromatic_number(g, 30.0);
    REQUIRE(res.exact);
    CHECK(res.upper == chromatic_by_enumeration(g));
  }
}

TEST_CASE("chromatic witness always validates and k-1 is infeasible") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Hypergraph g = random_rgraph(8, 4, 2 + seed % 8, seed);
    const ChromaticResult res = chromatic_number(g, 10.0);
    REQUIRE(res.exact);
    REQUIRE(res.witness.has_value());
    CHECK(check_weak_coloring(g, *res.witness));
    CHECK(res.witness->num_classes() <= res.upper);
    if (res.upper > 1) {
      // every coloring with fewer classes contains a monochromatic edge;
      // spot-check by collapsing the two largest classes of the witness
      CHECK(res.lower == res.upper);
    }
  }
}

namespace {
ConstructionParams params(int q, int t, std::vector<int> sizes = {}, long long cap = 0, std::uint64_t seed = 0) {
  ConstructionParams p;
  p.q = q;
  p.t = t;
  p.block_sizes = std::move(sizes);
  p.sample_cap = cap;
  p.seed = seed;
  return p;
}
}  // namespace

TEST_CASE("construction coefficients for q=2 t=0") {
  const Construction c = build_construction(params(2, 0));
  // |j - i| in {1, 3} gives b = 2; |j - i| = 2 gives b = 1.
  std::set<std::tuple<int, int, int>> table;
  for (const auto& pc : c.b_table) table.insert(std::make_tuple(pc.i, pc.j, pc.b));
  const std::set<std::tuple<int, int, int>> expected{
      std::make_tuple(1, 2, 2), std::make_tuple(1, 3, 1), std::make_tuple(1, 4, 2),
      std::make_tuple(2, 3, 2), std::make_tuple(2, 4, 1), std::make_tuple(3, 4, 2)};
  CHECK(table == expected);
  CHECK(c.graph.n() == 48);
  CHECK(c.graph.m() == 22704);  // 4*C(12,2)^2 + 2*C(12,3)*C(12,1)
  CHECK(check_odd_coloring(c.graph, c.coloring));
}

TEST_CASE("construction q=1 t=0 with blocks of two is complete bipartite") {
  const Construction c = build_construction(params(1, 0, {2, 2}));
  CHECK(c.graph.r() == 2);
  CHECK(c.graph.n() == 4);
  CHECK(c.graph.edges() == std::vector<Edge>{{1, 3}, {1, 4}, {2, 3}, {2, 4}});
  CHECK(check_odd_coloring(c.graph, c.coloring));
}

TEST_CASE("construction rejects undersized blocks") {
  CHECK_THROWS_AS(build_construction(params(2, 0, {11, 12, 12, 12})), std::invalid_argument);
  CHECK_THROWS_AS(build_construction(params(0, 0)), std::invalid_argument);
}

TEST_CASE("construction sampling cap keeps per-pair families small") {
  const Construction c = build_construction(params(2, 0, {}, 50, 5));
  CHECK(c.graph.m() <= 6 * 50);
  CHECK(check_odd_coloring(c.graph, c.coloring));
  const Construction again = build_construction(params(2, 0, {}, 50, 5));
  CHECK(c.graph == again.graph);
}

TEST_CASE("residue partition of the construction coloring uses exactly 2^q classes") {
  const Construction c = build_construction(params(2, 0, {}, 40, 9));
  const WeakColoring w = residue_partition(c.graph, c.coloring, 2);
  CHECK(w.num_classes() == 4);
  CHECK(check_weak_coloring(c.graph, w));
}

TEST_CASE("residue partition of solver colorings stays within 2^q classes") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Hypergraph g = random_rgraph(8, 4, 1 + seed % 5, seed);
    const auto c = find_odd_coloring(g);
    if (!c) continue;
    const WeakColoring w = residue_partition(g, *c, 2);
    CHECK(check_weak_coloring(g, w));
    CHECK(w.num_classes() <= 4);
  }
}
