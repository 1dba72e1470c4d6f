#include "oddhg/spectral.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

namespace oddhg {

namespace {

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

template <typename Tensor>
double residual_impl(const Tensor& t, double lambda, std::span<const double> x, int order) {
  const double scale = max_abs(x);
  if (scale == 0.0) throw std::invalid_argument("zero vector");
  std::vector<double> xn(x.begin(), x.end());
  for (double& v : xn) v /= scale;
  const std::vector<double> tx = oddhg::apply(t, std::span<const double>(xn));
  double res = 0.0;
  for (size_t j = 0; j < xn.size(); ++j) {
    res = std::max(res, std::abs(tx[j] - lambda * std::pow(xn[j], order - 1)));
  }
  return res;
}

template <typename Tensor>
NqzResult nqz_impl(const Tensor& t, int order, int dim, const NqzOptions& opts) {
  NqzResult out;
  std::vector<double> x(static_cast<size_t>(dim), 1.0);
  double lo_prev = -std::numeric_limits<double>::infinity();
  double hi_prev = std::numeric_limits<double>::infinity();

  for (long long it = 1; it <= opts.max_iter; ++it) {
    std::vector<double> z = oddhg::apply(t, std::span<const double>(x));
    for (size_t j = 0; j < z.size(); ++j) z[j] += std::pow(x[j], order - 1);  // + I shift

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < z.size(); ++j) {
      const double ratio = z[j] / std::pow(x[j], order - 1);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(hi));
    if (lo < lo_prev - slack || hi > hi_prev + slack) {
      throw std::logic_error("power iteration bracket monotonicity violated");
    }
    lo_prev = std::max(lo_prev, lo);
    hi_prev = std::min(hi_prev, hi);
    out.iterations = it;
    out.bracket_lo = lo_prev - 1.0;
    out.bracket_hi = hi_prev - 1.0;

    if (hi - lo <= opts.tol) {
      const double rho = (lo + hi) / 2.0 - 1.0;
      const double norm = max_abs(x);
      for (double& v : x) v /= norm;
      out.pair.lambda = rho;
      out.pair.x = x;
      out.pair.residual = residual_impl(t, rho, x, order);
      out.converged = true;
      return out;
    }
    const double norm = max_abs(z);
    for (size_t j = 0; j < z.size(); ++j) x[j] = std::pow(z[j] / norm, 1.0 / (order - 1));
  }
  // Best effort on non-convergence: report the midpoint pair and bracket.
  const double rho = (lo_prev + hi_prev) / 2.0 - 1.0;
  const double norm = max_abs(x);
  for (double& v : x) v /= norm;
  out.pair.lambda = rho;
  out.pair.x = x;
  out.pair.residual = residual_impl(t, rho, x, order);
  out.converged = false;
  return out;
}

void require_nonnegative(const HgTensor& t) {
  if (t.edge_coeff < 0) throw std::invalid_argument("tensor has negative entries");
  for (long long d : t.diag) {
    if (d < 0) throw std::invalid_argument("tensor has negative entries");
  }
}

void require_nonnegative(const DenseTensor& t) {
  for (const Rat& v : t.entries()) {
    if (v.sign() < 0) throw std::invalid_argument("tensor has negative entries");
  }
}

template <typename Tensor>
void require_irreducible(const Tensor& t) {
  const WeakIrreducibility w = is_weakly_irreducible(t);
  if (!w.irreducible) throw std::invalid_argument("tensor is weakly reducible; handle components separately");
}

}  // namespace

NqzResult nqz_spectral_radius(const HgTensor& t, const NqzOptions& opts) {
  require_nonnegative(t);
  require_irreducible(t);
  return nqz_impl(t, t.order, t.dim, opts);
}

NqzResult nqz_spectral_radius(const DenseTensor& t, const NqzOptions& opts) {
  if (t.order() < 2) throw std::invalid_argument("power iteration needs order at least 2");
  require_nonnegative(t);
  require_irreducible(t);
  return nqz_impl(t, t.order(), t.dim(), opts);
}

double eigen_residual(const HgTensor& t, double lambda, std::span<const double> x) {
  return residual_impl(t, lambda, x, t.order);
}

double eigen_residual(const DenseTensor& t, double lambda, std::span<const double> x) {
  return residual_impl(t, lambda, x, t.order());
}

EigenPair transport_eigenpair(const EigenPair& pair, const DiagonalSimilarity& s, const HgTensor& from,
                              const HgTensor& to, double verify_tol) {
  const int r = from.order;
  if (to.order != r || to.dim != from.dim) throw std::invalid_argument("tensor shape mismatch");
  if (s.modulus != r || static_cast<int>(s.exponents.size()) != from.dim)
    throw std::invalid_argument("similarity shape mismatch");
  if (r % 2 != 0) throw std::invalid_argument("real similarity requires even order");
  for (int e : s.exponents) {
    const int canon = ((e % r) + r) % r;
    if (canon != 0 && canon != r / 2) throw std::invalid_argument("similarity is not real (+-1)");
  }
  if (from.graph != to.graph || from.diag != to.diag)
    throw std::invalid_argument("certificate missing: tensors disagree off the adjacency part");

  // The conjugation multiplies every adjacency entry by w^s; for the map to
  // carry `from` onto `to` the factor must match the coefficient ratio.
  if (from.edge_coeff != 0 || to.edge_coeff != 0) {
    if (std::abs(from.edge_coeff) != std::abs(to.edge_coeff))
      throw std::invalid_argument("certificate missing: adjacency coefficients incompatible");
    const int needed = (from.edge_coeff == to.edge_coeff) ? 0 : r / 2;
    const DiagConjugation conj = similarity_conjugate(from, s);
    for (const ConjugatedEntry& entry : conj.adjacency) {
      if (entry.exponent != needed)
        throw std::invalid_argument("certificate missing: similarity does not map source to target");
    }
  }

  const double residual_from = eigen_residual(from, pair.lambda, pair.x);
  if (residual_from > verify_tol) throw std::invalid_argument("pair does not verify against source tensor");

  EigenPair out;
  out.lambda = pair.lambda;
  out.x = pair.x;
  for (size_t j = 0; j < out.x.size(); ++j) {
    const int canon = ((s.exponents[j] % r) + r) % r;
    if (canon == r / 2) out.x[j] = -out.x[j];
  }
  out.residual = eigen_residual(to, out.lambda, out.x);
  if (out.residual > residual_from + 1e-9 * (1.0 + std::abs(out.lambda)))
    throw std::runtime_error("residual blow-up: similarity did not transport the pair");
  return out;
}

// ---------------------------------------------------------------------------
// Exact polynomial helpers (coefficients ascending by degree).

namespace {

using Poly = std::vector<Rat>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derivative(const Poly& p) {
  Poly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long long>(i)));
  trim(d);
  return d;
}

// a = q * b + rem, deg(rem) < deg(b)
Poly divrem(Poly a, const Poly& b, Poly* quotient = nullptr) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  Poly q(a.size(), Rat(0));
  while (degree(a) >= degree(b)) {
    const int shift = degree(a) - degree(b);
    const Rat f = a.back() / b.back();
    q[static_cast<size_t>(shift)] = f;
    for (size_t i = 0; i < b.size(); ++i) a[static_cast<size_t>(shift) + i] -= f * b[i];
    trim(a);
    if (a.empty()) break;
  }
  if (quotient) {
    trim(q);
    *quotient = q;
  }
  return a;
}

Poly make_monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  const Rat lead = p.back();
  for (Rat& c : p) c /= lead;
  return p;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divrem(a, b);
    a = std::move(b);
    b = make_monic(std::move(r));
  }
  return make_monic(std::move(a));
}

/// Yun's square-free decomposition: p = prod factors[i].first ^ factors[i].second.
std::vector<std::pair<Poly, int>> square_free_factors(const Poly& p) {
  std::vector<std::pair<Poly, int>> out;
  Poly g = poly_gcd(p, derivative(p));
  if (degree(g) <= 0) {
    out.emplace_back(make_monic(p), 1);
    return out;
  }
  Poly w, y;
  divrem(p, g, &w);              // w = p / g
  divrem(derivative(p), g, &y);  // y = p' / g
  Poly dw = derivative(w);
  Poly z(y.size(), Rat(0));
  // z = y - w'
  for (size_t i = 0; i < z.size(); ++i) {
    Rat val = y[i];
    if (i < dw.size()) val -= dw[i];
    z[i] = val;
  }
  trim(z);
  int mult = 1;
  while (degree(w) > 0) {
    Poly f = poly_gcd(w, z);
    if (degree(f) > 0) out.emplace_back(f, mult);
    Poly w_next;
    divrem(w, f, &w_next);
    Poly y_next;
    divrem(z, f, &y_next);
    Poly dwn = derivative(w_next);
    Poly z_next(std::max(y_next.size(), dwn.size()), Rat(0));
    for (size_t i = 0; i < z_next.size(); ++i) {
      Rat val = i < y_next.size() ? y_next[i] : Rat(0);
      if (i < dwn.size()) val -= dwn[i];
      z_next[i] = val;
    }
    trim(z_next);
    w = std::move(w_next);
    z = std::move(z_next);
    ++mult;
  }
  return out;
}

/// Degree of gcd(p, p') modulo a prime, or -1 when the prime is unusable.
/// Degree 0 proves the exact gcd is constant, i.e. p is square-free.
int gcd_degree_mod_prime(const Poly& p, long long prime) {
  // Clear denominators: scale by the lcm; scaling does not change the gcd degree.
  int128 lcm = 1;
  for (const Rat& c : p) {
    const int128 g = detail::gcd128(lcm, c.den());
    lcm = detail::mul128(lcm / g, c.den());
  }
  auto reduce = [&](const Rat& c) -> long long {
    const int128 scaled = detail::mul128(c.num(), lcm / c.den());
    long long v = static_cast<long long>(((scaled % prime) + prime) % prime);
    return v;
  };
  std::vector<long long> a, b;
  for (const Rat& c : p) a.push_back(reduce(c));
  while (!a.empty() && a.back() == 0) a.pop_back();
  if (static_cast<int>(a.size()) - 1 != degree(p)) return -1;  // leading coefficient vanished
  for (size_t i = 1; i < a.size(); ++i) b.push_back(a[i] * static_cast<long long>(i) % prime);
  while (!b.empty() && b.back() == 0) b.pop_back();
  if (b.empty()) return -1;

  auto mod_inv = [&](long long v) {
    long long base = v % prime, result = 1, e = prime - 2;
    while (e > 0) {
      if (e & 1) result = static_cast<long long>(static_cast<__int128>(result) * base % prime);
      base = static_cast<long long>(static_cast<__int128>(base) * base % prime);
      e >>= 1;
    }
    return result;
  };
  while (!b.empty()) {
    // a mod b
    const long long inv = mod_inv(b.back());
    while (a.size() >= b.size()) {
      const long long f = static_cast<long long>(static_cast<__int128>(a.back()) * inv % prime);
      const size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) {
        a[shift + i] = ((a[shift + i] - static_cast<__int128>(f) * b[i]) % prime + prime) % prime;
      }
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

bool square_free_by_modular_check(const Poly& p) {
  for (long long prime : {2147483647LL, 2147483629LL, 2147483563LL}) {
    const int d = gcd_degree_mod_prime(p, prime);
    if (d == 0) return true;  // reduction of the true gcd divides this gcd
  }
  return false;
}

/// Durand-Kerner simultaneous iteration; intended for square-free inputs.
std::vector<std::complex<double>> polynomial_roots(const Poly& poly) {
  const int d = degree(poly);
  if (d <= 0) return {};
  std::vector<std::complex<double>> c(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) c[static_cast<size_t>(i)] = poly[static_cast<size_t>(i)].to_double();
  for (int i = 0; i <= d; ++i) c[static_cast<size_t>(i)] /= c[static_cast<size_t>(d)];

  double radius = 0.0;
  for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(c[static_cast<size_t>(i)]));
  radius = 1.0 + radius;

  auto eval = [&](std::complex<double> z) {
    std::complex<double> v = c[static_cast<size_t>(d)];
    for (int i = d - 1; i >= 0; --i) v = v * z + c[static_cast<size_t>(i)];
    return v;
  };

  std::vector<std::complex<double>> z(static_cast<size_t>(d));
  const std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc(1.0, 0.0);
  for (int i = 0; i < d; ++i) {
    acc *= seed;
    z[static_cast<size_t>(i)] = radius * acc;
  }
  double shift = 0.0;
  for (int pass = 0; pass < 2000; ++pass) {
    shift = 0.0;
    for (int i = 0; i < d; ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (int j = 0; j < d; ++j) {
        if (j != i) denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
      }
      if (denom == std::complex<double>(0.0, 0.0)) {
        z[static_cast<size_t>(i)] += std::complex<double>(1e-8, 1e-8);
        shift = 1.0;
        continue;
      }
      const std::complex<double> delta = eval(z[static_cast<size_t>(i)]) / denom;
      z[static_cast<size_t>(i)] -= delta;
      shift = std::max(shift, std::abs(delta) / (1.0 + std::abs(z[static_cast<size_t>(i)])));
    }
    if (shift < 1e-14) break;
  }
  if (shift > 1e-8) throw NoConvergence("root finding did not converge");
  return z;
}

}  // namespace

// ---------------------------------------------------------------------------

CharPoly charpoly_dim2(const DenseTensor& t) {
  if (t.dim() != 2) throw std::invalid_argument("characteristic polynomial implemented for dimension 2 only");
  if (t.order() < 2) throw std::invalid_argument("characteristic polynomial needs order at least 2");
  const int r = t.order();
  const int d = r - 1;

  // Coefficient of x1^{d-i} x2^i in (Tx)_j: sum of entries T_{j,tuple} over
  // tuples in {1,2}^{d} with exactly i twos.
  std::vector<std::vector<Rat>> form(2, std::vector<Rat>(static_cast<size_t>(d) + 1, Rat(0)));
  std::vector<int> idx(static_cast<size_t>(r), 1);
  for (int j = 1; j <= 2; ++j) {
    idx[0] = j;
    std::fill(idx.begin() + 1, idx.end(), 1);
    for (;;) {
      int twos = 0;
      for (int p = 1; p < r; ++p) twos += idx[static_cast<size_t>(p)] == 2 ? 1 : 0;
      form[static_cast<size_t>(j - 1)][static_cast<size_t>(twos)] += t.at(idx);
      int p = r - 1;
      while (p >= 1 && idx[static_cast<size_t>(p)] == 2) {
        idx[static_cast<size_t>(p)] = 1;
        --p;
      }
      if (p < 1) break;
      ++idx[static_cast<size_t>(p)];
    }
  }

  // Sylvester matrix entries for the binary forms
  //   f1 = lambda x1^d - (Tx)_1,  f2 = lambda x2^d - (Tx)_2,
  // as degree-1 polynomials in lambda: value = c0 + c1 * lambda.
  const int size = 2 * d;
  struct LinPoly {
    Rat c0, c1;
  };
  std::vector<std::vector<LinPoly>> syl(static_cast<size_t>(size),
                                        std::vector<LinPoly>(static_cast<size_t>(size), {Rat(0), Rat(0)}));
  for (int s = 0; s < d; ++s) {
    for (int i = 0; i <= d; ++i) {
      LinPoly& top = syl[static_cast<size_t>(s)][static_cast<size_t>(s + i)];
      top.c0 = -form[0][static_cast<size_t>(i)];
      if (i == 0) top.c1 = Rat(1);
      LinPoly& bottom = syl[static_cast<size_t>(d + s)][static_cast<size_t>(s + i)];
      bottom.c0 = -form[1][static_cast<size_t>(i)];
      if (i == d) bottom.c1 = Rat(1);
    }
  }

  // Evaluate det at 2d+1 integer points, then Newton interpolation.
  std::vector<Rat> points;
  points.push_back(Rat(0));
  for (int v = 1; static_cast<int>(points.size()) < size + 1; ++v) {
    points.push_back(Rat(v));
    if (static_cast<int>(points.size()) < size + 1) points.push_back(Rat(-v));
  }

  auto det_at = [&](const Rat& lambda) {
    std::vector<std::vector<Rat>> m(static_cast<size_t>(size), std::vector<Rat>(static_cast<size_t>(size)));
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        const LinPoly& e = syl[static_cast<size_t>(i)][static_cast<size_t>(j)];
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] = e.c0 + e.c1 * lambda;
      }
    }
    Rat det(1);
    int sign = 1;
    for (int col = 0; col < size; ++col) {
      int pivot = -1;
      for (int row = col; row < size; ++row) {
        if (!m[static_cast<size_t>(row)][static_cast<size_t>(col)].is_zero()) {
          pivot = row;
          break;
        }
      }
      if (pivot < 0) return Rat(0);
      if (pivot != col) {
        std::swap(m[static_cast<size_t>(pivot)], m[static_cast<size_t>(col)]);
        sign = -sign;
      }
      const Rat pv = m[static_cast<size_t>(col)][static_cast<size_t>(col)];
      det *= pv;
      for (int row = col + 1; row < size; ++row) {
        const Rat f = m[static_cast<size_t>(row)][static_cast<size_t>(col)] / pv;
        if (f.is_zero()) continue;
        for (int j2 = col; j2 < size; ++j2) {
          m[static_cast<size_t>(row)][static_cast<size_t>(j2)] -= f * m[static_cast<size_t>(col)][static_cast<size_t>(j2)];
        }
      }
    }
    return sign < 0 ? -det : det;
  };

  std::vector<Rat> values;
  values.reserve(points.size());
  for (const Rat& p : points) values.push_back(det_at(p));

  // Newton divided differences, then expansion to monomial coefficients.
  const size_t np = points.size();
  std::vector<Rat> dd = values;
  for (size_t level = 1; level < np; ++level) {
    for (size_t i = np - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (points[i] - points[i - level]);
      if (i == level) break;
    }
  }
  Poly result{dd[np - 1]};
  for (size_t i = np - 1; i-- > 0;) {
    // result = result * (x - points[i]) + dd[i]
    Poly next(result.size() + 1, Rat(0));
    for (size_t j = 0; j < result.size(); ++j) {
      next[j + 1] += result[j];
      next[j] -= result[j] * points[i];
    }
    next[0] += dd[i];
    result = std::move(next);
  }
  trim(result);
  if (degree(result) != size || !(result.back() == Rat(1))) {
    throw std::logic_error("characteristic polynomial lost its monic leading term");
  }
  return CharPoly{result};
}

int SpectrumMultiset::total_multiplicity() const {
  int total = 0;
  for (const auto& [root, mult] : roots) total += mult;
  return total;
}

SpectrumMultiset spectrum_dim2(const DenseTensor& t, double cluster_tol) {
  const CharPoly cp = charpoly_dim2(t);
  Poly p = cp.coeffs;

  std::vector<std::pair<Poly, int>> factors;
  if (square_free_by_modular_check(p)) {
    factors.emplace_back(make_monic(p), 1);
  } else {
    factors = square_free_factors(p);
  }

  std::vector<std::pair<std::complex<double>, int>> raw;
  for (const auto& [factor, mult] : factors) {
    for (const std::complex<double>& z : polynomial_roots(factor)) raw.emplace_back(z, mult);
  }

  // Cluster nearby roots, summing multiplicities; positions are
  // multiplicity-weighted means.
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  SpectrumMultiset out;
  std::vector<bool> used(raw.size(), false);
  for (size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::complex<double> sum = raw[i].first * static_cast<double>(raw[i].second);
    int mult = raw[i].second;
    used[i] = true;
    for (size_t j = i + 1; j < raw.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(raw[j].first - raw[i].first) <= cluster_tol) {
        sum += raw[j].first * static_cast<double>(raw[j].second);
        mult += raw[j].second;
        used[j] = true;
      }
    }
    out.roots.emplace_back(sum / static_cast<double>(mult), mult);
  }
  assert(out.total_multiplicity() == cp.degree());
  return out;
}

bool is_symmetric_spectrum(const SpectrumMultiset& s, double tol) {
  std::vector<std::complex<double>> items;
  for (const auto& [root, mult] : s.roots) {
    for (int i = 0; i < mult; ++i) items.push_back(root);
  }
  std::vector<bool> matched(items.size(), false);
  for (size_t i = 0; i < items.size(); ++i) {
    if (matched[i]) continue;
    const std::complex<double> want = -items[i];
    double best = std::numeric_limits<double>::infinity();
    size_t best_j = items.size();
    for (size_t j = 0; j < items.size(); ++j) {
      if (j == i || matched[j]) continue;
      const double dist = std::abs(items[j] - want);
      if (dist < best) {
        best = dist;
        best_j = j;
      }
    }
    const double self = std::abs(items[i] - want);  // |2 root|: root pairs with itself near 0
    if (self <= tol && self <= best) {
      matched[i] = true;
      continue;
    }
    if (best_j == items.size() || best > tol) return false;
    matched[i] = true;
    matched[best_j] = true;
  }
  return true;
}

RhoResult rho_by_components(const Hypergraph& g, MatrixKind which, double tol) {
  const ComponentPartition parts = connected_components(g);
  RhoResult out;
  out.converged = true;
  NqzOptions opts;
  opts.tol = tol;
  for (const ComponentBlock& block : parts.blocks) {
    const HgTensor tensor =
        which == MatrixKind::kAdjacency ? adjacency_tensor(block.induced) : signless_laplacian(block.induced);
    const NqzResult r = nqz_spectral_radius(tensor, opts);
    out.component_rhos.push_back(r.pair.lambda);
    out.converged = out.converged && r.converged;
    out.rho = std::max(out.rho, r.pair.lambda);
  }
  return out;
}

}  // namespace oddhg
