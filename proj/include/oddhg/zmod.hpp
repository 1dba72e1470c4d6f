#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace oddhg {

/// Dense integer matrix, row-major. Entries are kept in long long; row and
/// column updates check for overflow and throw std::overflow_error.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<long long> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(checked_extent(r, c), 0) {}

  long long& at(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
  long long at(int i, int j) const { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }

  static IntMatrix identity(int k);

  bool operator==(const IntMatrix&) const = default;

 private:
  static size_t checked_extent(int r, int c) {
    if (r <= 0 || c <= 0) throw std::invalid_argument("matrix dimensions must be positive");
    return static_cast<size_t>(r) * static_cast<size_t>(c);
  }
};

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);

/// Exact determinant by fraction-free (Bareiss) elimination.
long long det(const IntMatrix& m);

/// U * M * V = S with U, V unimodular and S diagonal, d1 | d2 | ...
struct SnfDecomposition {
  IntMatrix u;
  IntMatrix s;
  IntMatrix v;
};

/// Deterministic pivoting: smallest nonzero absolute value, then lowest row,
/// then lowest column.
SnfDecomposition smith_normal_form(const IntMatrix& m);

struct ModSolution {
  std::vector<long long> particular;                // M * particular = b (mod modulus)
  std::vector<std::vector<long long>> kernel_basis; // M * k = 0 (mod modulus) each
};

/// Solves M x = b (mod modulus) through the Smith normal form; empty optional
/// when the system is infeasible. Throws std::invalid_argument for modulus < 2
/// or mismatched dimensions.
std::optional<ModSolution> solve_mod(const IntMatrix& m, const std::vector<long long>& b, long long modulus);

struct Gf2Solution {
  std::vector<std::uint8_t> solution;
  std::vector<std::vector<std::uint8_t>> kernel_basis;
};

/// Gaussian elimination over GF(2) with bit-packed rows. Rows hold 0/1
/// entries; returns a particular solution plus nullspace basis, or empty
/// optional when inconsistent.
std::optional<Gf2Solution> gf2_solve(const std::vector<std::vector<std::uint8_t>>& rows,
                                     const std::vector<std::uint8_t>& b);

}  // namespace oddhg
