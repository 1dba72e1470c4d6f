#include "oddhg/zmod.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace oddhg {

namespace {

long long checked(__int128 v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("integer matrix entry overflow");
  return static_cast<long long>(v);
}

// row[i] += q * row[k]
void add_row(IntMatrix& m, int dst, int src, long long q) {
  for (int j = 0; j < m.cols; ++j)
    m.at(dst, j) = checked(static_cast<__int128>(m.at(dst, j)) + static_cast<__int128>(q) * m.at(src, j));
}

void add_col(IntMatrix& m, int dst, int src, long long q) {
  for (int i = 0; i < m.rows; ++i)
    m.at(i, dst) = checked(static_cast<__int128>(m.at(i, dst)) + static_cast<__int128>(q) * m.at(i, src));
}

void swap_rows(IntMatrix& m, int i, int j) {
  if (i == j) return;
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void swap_cols(IntMatrix& m, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

void negate_row(IntMatrix& m, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

long long mod_canon(long long v, long long modulus) {
  long long r = v % modulus;
  return r < 0 ? r + modulus : r;
}

// ax + by = gcd(a, b) with a, b >= 0
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1 = 0, y1 = 0;
  long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long long mod_inverse(long long a, long long modulus) {
  if (modulus == 1) return 0;
  long long x = 0, y = 0;
  long long g = ext_gcd(mod_canon(a, modulus), modulus, x, y);
  if (g != 1) throw std::logic_error("mod_inverse of non-unit");
  return mod_canon(x, modulus);
}

}  // namespace

IntMatrix IntMatrix::identity(int k) {
  IntMatrix m(k, k);
  for (int i = 0; i < k; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul dimension mismatch");
  IntMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      const long long aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j)
        c.at(i, j) = checked(static_cast<__int128>(c.at(i, j)) + static_cast<__int128>(aik) * b.at(k, j));
    }
  }
  return c;
}

long long det(const IntMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
  const int n = m.rows;
  std::vector<__int128> w(m.a.begin(), m.a.end());
  auto at = [&](int i, int j) -> __int128& { return w[static_cast<size_t>(i) * n + j]; };
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return checked(sign * at(n - 1, n - 1));
}

SnfDecomposition smith_normal_form(const IntMatrix& m) {
  const int rows = m.rows, cols = m.cols;
  SnfDecomposition out{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  IntMatrix& s = out.s;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;
  const int k_max = std::min(rows, cols);

  for (int k = 0; k < k_max; ++k) {
    for (;;) {
      // Pivot: smallest nonzero |entry| in the trailing submatrix, ties by
      // lowest row then lowest column.
      int pi = -1, pj = -1;
      long long best = 0;
      for (int i = k; i < rows; ++i) {
        for (int j = k; j < cols; ++j) {
          const long long val = std::llabs(s.at(i, j));
          if (val != 0 && (pi < 0 || val < best)) {
            best = val;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi < 0) break;  // trailing submatrix is zero
      swap_rows(s, k, pi);
      swap_rows(u, k, pi);
      swap_cols(s, k, pj);
      swap_cols(v, k, pj);

      bool clean = true;
      for (int i = k + 1; i < rows; ++i) {
        if (s.at(i, k) == 0) continue;
        const long long q = s.at(i, k) / s.at(k, k);
        add_row(s, i, k, -q);
        add_row(u, i, k, -q);
        if (s.at(i, k) != 0) clean = false;
      }
      for (int j = k + 1; j < cols; ++j) {
        if (s.at(k, j) == 0) continue;
        const long long q = s.at(k, j) / s.at(k, k);
        add_col(s, j, k, -q);
        add_col(v, j, k, -q);
        if (s.at(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot divides everything below-right, or pull an offending row up and
      // reduce again.
      int bi = -1;
      for (int i = k + 1; i < rows && bi < 0; ++i) {
        for (int j = k + 1; j < cols; ++j) {
          if (s.at(i, j) % s.at(k, k) != 0) {
            bi = i;
            break;
          }
        }
      }
      if (bi < 0) break;
      add_row(s, k, bi, 1);
      add_row(u, k, bi, 1);
    }
    if (s.at(k, k) < 0) {
      negate_row(s, k);
      negate_row(u, k);
    }
  }
  return out;
}

std::optional<ModSolution> solve_mod(const IntMatrix& m, const std::vector<long long>& b, long long modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
  if (static_cast<int>(b.size()) != m.rows) throw std::invalid_argument("right-hand side size mismatch");

  const SnfDecomposition snf = smith_normal_form(m);
  const int rows = m.rows, cols = m.cols;
  const int k_max = std::min(rows, cols);

  // c = U b, reduced mod modulus
  std::vector<long long> c(static_cast<size_t>(rows), 0);
  for (int i = 0; i < rows; ++i) {
    __int128 acc = 0;
    for (int j = 0; j < rows; ++j) acc += static_cast<__int128>(snf.u.at(i, j)) * b[static_cast<size_t>(j)];
    c[static_cast<size_t>(i)] = mod_canon(checked(acc % modulus), modulus);
  }

  // Diagonal system d_i y_i = c_i (mod modulus); y_i stepping by modulus/gcd.
  std::vector<long long> y(static_cast<size_t>(cols), 0);
  std::vector<long long> step(static_cast<size_t>(cols), 1);
  for (int i = 0; i < k_max; ++i) {
    const long long d = mod_canon(snf.s.at(i, i), modulus);
    const long long ci = c[static_cast<size_t>(i)];
    const long long g = std::gcd(d == 0 ? modulus : d, modulus);
    if (ci % g != 0) return std::nullopt;
    const long long sub = modulus / g;
    if (d == 0) {
      y[static_cast<size_t>(i)] = 0;
      step[static_cast<size_t>(i)] = 1;
    } else {
      const long long inv = mod_inverse(d / g, sub);
      y[static_cast<size_t>(i)] = mod_canon(static_cast<long long>(
                                      static_cast<__int128>(ci / g) * inv % sub),
                                  sub);
      step[static_cast<size_t>(i)] = sub;
    }
  }
  for (int i = k_max; i < rows; ++i) {
    if (c[static_cast<size_t>(i)] != 0) return std::nullopt;
  }

  ModSolution sol;
  sol.particular.assign(static_cast<size_t>(cols), 0);
  for (int i = 0; i < cols; ++i) {
    __int128 acc = 0;
    for (int j = 0; j < cols; ++j) acc += static_cast<__int128>(snf.v.at(i, j)) * y[static_cast<size_t>(j)];
    sol.particular[static_cast<size_t>(i)] = mod_canon(checked(acc % modulus), modulus);
  }
  for (int j = 0; j < cols; ++j) {
    const long long st = mod_canon(step[static_cast<size_t>(j)], modulus);
    if (st == 0) continue;  // no residual freedom in this coordinate
    std::vector<long long> k(static_cast<size_t>(cols), 0);
    bool nonzero = false;
    for (int i = 0; i < cols; ++i) {
      const long long val =
          mod_canon(checked(static_cast<__int128>(snf.v.at(i, j)) * st % modulus), modulus);
      k[static_cast<size_t>(i)] = val;
      nonzero = nonzero || val != 0;
    }
    if (nonzero) sol.kernel_basis.push_back(std::move(k));
  }
  return sol;
}

std::optional<Gf2Solution> gf2_solve(const std::vector<std::vector<std::uint8_t>>& rows,
                                     const std::vector<std::uint8_t>& b) {
  const int m = static_cast<int>(rows.size());
  if (static_cast<int>(b.size()) != m) throw std::invalid_argument("right-hand side size mismatch");
  const int n = m == 0 ? 0 : static_cast<int>(rows[0].size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("ragged bit matrix");
  }

  const int words = (n + 1 + 63) / 64;  // +1 bit for b, packed at position n
  std::vector<std::vector<std::uint64_t>> w(static_cast<size_t>(m),
                                            std::vector<std::uint64_t>(static_cast<size_t>(words), 0));
  auto set_bit = [&](int i, int j) { w[static_cast<size_t>(i)][static_cast<size_t>(j) / 64] ^= 1ULL << (j % 64); };
  auto get_bit = [&](int i, int j) {
    return (w[static_cast<size_t>(i)][static_cast<size_t>(j) / 64] >> (j % 64)) & 1ULL;
  };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j)
      if (rows[static_cast<size_t>(i)][static_cast<size_t>(j)] & 1) set_bit(i, j);
    if (b[static_cast<size_t>(i)] & 1) set_bit(i, n);
  }

  std::vector<int> pivot_col;  // per pivot row, in order
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int pr = -1;
    for (int i = rank; i < m; ++i) {
      if (get_bit(i, col)) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(w[static_cast<size_t>(rank)], w[static_cast<size_t>(pr)]);
    for (int i = 0; i < m; ++i) {
      if (i != rank && get_bit(i, col)) {
        for (int k = 0; k < words; ++k) w[static_cast<size_t>(i)][static_cast<size_t>(k)] ^= w[static_cast<size_t>(rank)][static_cast<size_t>(k)];
      }
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int i = rank; i < m; ++i) {
    if (get_bit(i, n)) return std::nullopt;  // 0 = 1
  }

  Gf2Solution sol;
  sol.solution.assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < rank; ++i) {
    sol.solution[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] =
        static_cast<std::uint8_t>(get_bit(i, n));
  }
  std::vector<std::uint8_t> is_pivot(static_cast<size_t>(n), 0);
  for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = 1;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    std::vector<std::uint8_t> k(static_cast<size_t>(n), 0);
    k[static_cast<size_t>(f)] = 1;
    for (int i = 0; i < rank; ++i) {
      if (get_bit(i, f)) k[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] = 1;
    }
    sol.kernel_basis.push_back(std::move(k));
  }
  return sol;
}

}  // namespace oddhg
