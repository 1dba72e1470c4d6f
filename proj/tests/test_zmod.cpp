#include <doctest.h>

#include <random>

#include "oddhg/zmod.hpp"
#include "test_util.hpp"

using namespace oddhg;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return m;
}

IntMatrix incidence(const Hypergraph& g) {
  IntMatrix m(static_cast<int>(g.m()), g.n());
  for (int e = 0; e < static_cast<int>(g.m()); ++e) {
    for (int v : g.edges()[static_cast<size_t>(e)]) m.at(e, v - 1) = 1;
  }
  return m;
}

bool is_diagonal(const IntMatrix& s) {
  for (int i = 0; i < s.rows; ++i) {
    for (int j = 0; j < s.cols; ++j) {
      if (i != j && s.at(i, j) != 0) return false;
    }
  }
  return true;
}

void check_snf_contract(const IntMatrix& m) {
  const SnfDecomposition snf = smith_normal_form(m);
  CHECK(matmul(matmul(snf.u, m), snf.v) == snf.s);
  CHECK(is_diagonal(snf.s));
  CHECK(std::abs(det(snf.u)) == 1);
  CHECK(std::abs(det(snf.v)) == 1);
  const int k = std::min(m.rows, m.cols);
  for (int i = 0; i + 1 < k; ++i) {
    const long long d = snf.s.at(i, i);
    const long long next = snf.s.at(i + 1, i + 1);
    CHECK(d >= 0);
    if (d != 0) CHECK(next % d == 0);
    if (d == 0) CHECK(next == 0);
  }
}

long long mod_canon(long long v, long long modulus) {
  const long long r = v % modulus;
  return r < 0 ? r + modulus : r;
}

bool satisfies(const IntMatrix& m, const std::vector<long long>& x, const std::vector<long long>& b,
               long long modulus) {
  for (int i = 0; i < m.rows; ++i) {
    long long acc = 0;
    for (int j = 0; j < m.cols; ++j) acc += m.at(i, j) * x[static_cast<size_t>(j)];
    if (mod_canon(acc - b[static_cast<size_t>(i)], modulus) != 0) return false;
  }
  return true;
}

/// Enumeration oracle for feasibility of M x = b (mod modulus).
bool feasible_by_enumeration(const IntMatrix& m, const std::vector<long long>& b, long long modulus) {
  std::vector<long long> x(static_cast<size_t>(m.cols), 0);
  for (;;) {
    if (satisfies(m, x, b, modulus)) return true;
    int p = 0;
    while (p < m.cols && x[static_cast<size_t>(p)] == modulus - 1) {
      x[static_cast<size_t>(p)] = 0;
      ++p;
    }
    if (p == m.cols) return false;
    ++x[static_cast<size_t>(p)];
  }
}

}  // namespace

TEST_CASE("snf of a single row") {
  const SnfDecomposition snf = smith_normal_form(from_rows({{1, 1, 1, 1}}));
  CHECK(snf.s == from_rows({{1, 0, 0, 0}}));
}

TEST_CASE("snf of the identity is trivial") {
  const IntMatrix eye = IntMatrix::identity(2);
  const SnfDecomposition snf = smith_normal_form(eye);
  CHECK(snf.s == eye);
  CHECK(snf.u == eye);
  CHECK(snf.v == eye);
}

TEST_CASE("snf invariant factors by hand") {
  // gcd of entries is 2 and d1*d2 = |det| = 8.
  const SnfDecomposition snf = smith_normal_form(from_rows({{2, 4}, {6, 8}}));
  CHECK(snf.s.at(0, 0) == 2);
  CHECK(snf.s.at(1, 1) == 4);
  check_snf_contract(from_rows({{2, 4}, {6, 8}}));
}

TEST_CASE("snf fixes the divisibility chain across diagonal entries") {
  IntMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(1, 1) = 3;
  const SnfDecomposition snf = smith_normal_form(m);
  CHECK(snf.s.at(0, 0) == 1);  // gcd of all entries
  CHECK(snf.s.at(1, 1) == 6);  // d1*d2 = |det|
  check_snf_contract(m);
}

TEST_CASE("snf contract on random matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 5);
    const int cols = 1 + static_cast<int>(rng() % 5);
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) m.at(i, j) = static_cast<long long>(rng() % 19) - 9;
    }
    check_snf_contract(m);
  }
}

TEST_CASE("solve_mod single constraint") {
  const auto sol = solve_mod(from_rows({{1, 1, 1, 1}}), {2}, 4);
  REQUIRE(sol.has_value());
  CHECK(sol->particular == std::vector<long long>{2, 0, 0, 0});
  for (const auto& k : sol->kernel_basis) {
    CHECK(satisfies(from_rows({{1, 1, 1, 1}}), k, {0}, 4));
  }
}

TEST_CASE("solve_mod detects the complete 4-graph obstruction") {
  // Summing the five incidence rows of the complete 4-graph on [5] gives
  // 4*sum(x) = 10, i.e. 0 = 2 (mod 4).
  const IntMatrix m = incidence(testutil::complete_rgraph(5, 4));
  const std::vector<long long> b(5, 2);
  CHECK_FALSE(solve_mod(m, b, 4).has_value());
  CHECK_FALSE(feasible_by_enumeration(m, b, 4));
}

TEST_CASE("solve_mod rejects modulus below 2") {
  CHECK_THROWS_AS(solve_mod(from_rows({{1}}), {0}, 1), std::invalid_argument);
}

TEST_CASE("solve_mod reproduces constructed feasible systems") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 4);
    const int cols = 1 + static_cast<int>(rng() % 5);
    const long long modulus = 2 + static_cast<long long>(rng() % 7);
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) m.at(i, j) = static_cast<long long>(rng() % 11) - 5;
    }
    std::vector<long long> x0(static_cast<size_t>(cols));
    for (auto& v : x0) v = static_cast<long long>(rng() % static_cast<std::uint64_t>(modulus));
    std::vector<long long> b(static_cast<size_t>(rows), 0);
    for (int i = 0; i < rows; ++i) {
      long long acc = 0;
      for (int j = 0; j < cols; ++j) acc += m.at(i, j) * x0[static_cast<size_t>(j)];
      b[static_cast<size_t>(i)] = mod_canon(acc, modulus);
    }
    const auto sol = solve_mod(m, b, modulus);
    REQUIRE(sol.has_value());
    CHECK(satisfies(m, sol->particular, b, modulus));
    const std::vector<long long> zero(static_cast<size_t>(rows), 0);
    for (const auto& k : sol->kernel_basis) CHECK(satisfies(m, k, zero, modulus));
  }
}

TEST_CASE("solve_mod feasibility agrees with enumeration") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 3);
    const int cols = 1 + static_cast<int>(rng() % 6);
    const long long modulus = 2 + static_cast<long long>(rng() % 5);
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) m.at(i, j) = static_cast<long long>(rng() % 9) - 4;
    }
    std::vector<long long> b(static_cast<size_t>(rows));
    for (auto& v : b) v = static_cast<long long>(rng() % static_cast<std::uint64_t>(modulus));
    const bool solver = solve_mod(m, b, modulus).has_value();
    const bool oracle = feasible_by_enumeration(m, b, modulus);
    CHECK(solver == oracle);
  }
}

TEST_CASE("gf2 single row") {
  const auto sol = gf2_solve({{1, 1, 1, 1, 1, 1}}, {1});
  REQUIRE(sol.has_value());
  CHECK(sol->solution == std::vector<std::uint8_t>{1, 0, 0, 0, 0, 0});
  CHECK(sol->kernel_basis.size() == 5);
}

TEST_CASE("gf2 detects the complete 6-graph parity obstruction") {
  // Each column of the incidence matrix of the complete 6-graph on [7] has
  // six ones, so the rows sum to zero while the right side sums to one.
  const Hypergraph k76 = testutil::complete_rgraph(7, 6);
  std::vector<std::vector<std::uint8_t>> rows(7, std::vector<std::uint8_t>(7, 0));
  for (size_t e = 0; e < k76.edges().size(); ++e) {
    for (int v : k76.edges()[e]) rows[e][static_cast<size_t>(v - 1)] = 1;
  }
  CHECK_FALSE(gf2_solve(rows, std::vector<std::uint8_t>(7, 1)).has_value());
}

TEST_CASE("gf2 zero right side admits the zero vector") {
  const auto sol = gf2_solve({{1, 0, 1}, {0, 1, 1}}, {0, 0});
  REQUIRE(sol.has_value());
  CHECK(sol->solution == std::vector<std::uint8_t>{0, 0, 0});
}

TEST_CASE("gf2 kernel vectors shift solutions to solutions") {
  const std::vector<std::vector<std::uint8_t>> rows{{1, 1, 0, 1, 0}, {0, 1, 1, 0, 1}, {1, 0, 0, 1, 1}};
  const std::vector<std::uint8_t> b{1, 0, 1};
  const auto sol = gf2_solve(rows, b);
  REQUIRE(sol.has_value());
  for (const auto& k : sol->kernel_basis) {
    for (size_t i = 0; i < rows.size(); ++i) {
      int parity = 0;
      for (size_t j = 0; j < rows[i].size(); ++j) {
        parity ^= rows[i][j] & static_cast<std::uint8_t>(sol->solution[j] ^ k[j]);
      }
      CHECK(parity == b[i]);
    }
  }
}

TEST_CASE("gf2 feasibility agrees with enumeration") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 6 + static_cast<int>(rng() % 15);  // up to 20 columns
    const int m = 2 + static_cast<int>(rng() % 6);
    std::vector<std::vector<std::uint8_t>> rows(static_cast<size_t>(m),
                                                std::vector<std::uint8_t>(static_cast<size_t>(n), 0));
    for (auto& row : rows) {
      // sparse rows
      for (int d = 0; d < 4; ++d) row[rng() % static_cast<std::uint64_t>(n)] = 1;
    }
    std::vector<std::uint8_t> b(static_cast<size_t>(m));
    for (auto& v : b) v = static_cast<std::uint8_t>(rng() % 2);

    bool oracle = false;
    for (std::uint64_t mask = 0; mask < (1ULL << n) && !oracle; ++mask) {
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) {
        int parity = 0;
        for (int j = 0; j < n; ++j) parity ^= rows[static_cast<size_t>(i)][static_cast<size_t>(j)] & static_cast<int>((mask >> j) & 1);
        ok = (parity & 1) == b[static_cast<size_t>(i)];
      }
      oracle = ok;
    }
    const auto sol = gf2_solve(rows, b);
    CHECK(sol.has_value() == oracle);
    if (sol) {
      for (int i = 0; i < m; ++i) {
        int parity = 0;
        for (int j = 0; j < n; ++j)
          parity ^= rows[static_cast<size_t>(i)][static_cast<size_t>(j)] & sol->solution[static_cast<size_t>(j)];
        CHECK((parity & 1) == b[static_cast<size_t>(i)]);
      }
    }
  }
}
