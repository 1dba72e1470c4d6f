#include "oddhg/tensor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>

namespace oddhg {

namespace {

long long factorial(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

HgTensor make_tensor(const Hypergraph& g, bool with_degrees, int coeff) {
  return HgTensor{g.r(), g.n(),
                  with_degrees ? degrees(g) : std::vector<long long>(static_cast<size_t>(g.n()), 0),
                  coeff, g};
}

}  // namespace

Rat HgTensor::entry(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != order) throw std::invalid_argument("index arity mismatch");
  for (int v : index) {
    if (v < 1 || v > dim) throw std::invalid_argument("index out of range");
  }
  const bool all_equal = std::all_of(index.begin(), index.end(), [&](int v) { return v == index[0]; });
  if (all_equal) return Rat(diag[static_cast<size_t>(index[0] - 1)]);
  if (edge_coeff == 0) return Rat(0);
  Edge sorted(index.begin(), index.end());
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) return Rat(0);  // repeated index off the diagonal
  }
  if (!std::binary_search(graph.edges().begin(), graph.edges().end(), sorted)) return Rat(0);
  return Rat(edge_coeff, factorial(order - 1));
}

HgTensor adjacency_tensor(const Hypergraph& g) { return make_tensor(g, false, +1); }
HgTensor degree_tensor(const Hypergraph& g) { return make_tensor(g, true, 0); }
HgTensor laplacian(const Hypergraph& g) { return make_tensor(g, true, -1); }
HgTensor signless_laplacian(const Hypergraph& g) { return make_tensor(g, true, +1); }

DenseTensor::DenseTensor(int order, int dim, long long entry_cap) : order_(order), dim_(dim) {
  if (order_ < 1 || dim_ < 1) throw std::invalid_argument("tensor order and dimension must be positive");
  long long count = 1;
  for (int i = 0; i < order_; ++i) {
    if (count > entry_cap / dim_) throw std::invalid_argument("tensor entry count above cap");
    count *= dim_;
  }
  if (count > entry_cap) throw std::invalid_argument("tensor entry count above cap");
  entries_.assign(static_cast<size_t>(count), Rat(0));
}

size_t DenseTensor::linear(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != order_) throw std::invalid_argument("index arity mismatch");
  size_t lin = 0;
  for (int v : index) {
    if (v < 1 || v > dim_) throw std::invalid_argument("index out of range");
    lin = lin * static_cast<size_t>(dim_) + static_cast<size_t>(v - 1);
  }
  return lin;
}

Rat& DenseTensor::at(std::span<const int> index) { return entries_[linear(index)]; }
const Rat& DenseTensor::at(std::span<const int> index) const { return entries_[linear(index)]; }

DenseTensor unit_tensor(int order, int dim) {
  DenseTensor t(order, dim);
  std::vector<int> idx(static_cast<size_t>(order));
  for (int j = 1; j <= dim; ++j) {
    std::fill(idx.begin(), idx.end(), j);
    t.at(idx) = Rat(1);
  }
  return t;
}

DenseTensor negate(const DenseTensor& t) {
  DenseTensor out = t;
  std::vector<int> idx(static_cast<size_t>(t.order()), 1);
  for (;;) {
    out.at(idx) = -t.at(idx);
    int p = t.order() - 1;
    while (p >= 0 && idx[static_cast<size_t>(p)] == t.dim()) {
      idx[static_cast<size_t>(p)] = 1;
      --p;
    }
    if (p < 0) break;
    ++idx[static_cast<size_t>(p)];
  }
  return out;
}

DenseTensor to_dense(const HgTensor& t, long long entry_cap) {
  DenseTensor out(t.order, t.dim, entry_cap);
  std::vector<int> idx(static_cast<size_t>(t.order), 1);
  for (;;) {
    out.at(idx) = t.entry(idx);
    int p = t.order - 1;
    while (p >= 0 && idx[static_cast<size_t>(p)] == t.dim) {
      idx[static_cast<size_t>(p)] = 1;
      --p;
    }
    if (p < 0) break;
    ++idx[static_cast<size_t>(p)];
  }
  return out;
}

std::vector<double> apply(const HgTensor& t, std::span<const double> x) {
  if (static_cast<int>(x.size()) != t.dim) throw std::invalid_argument("vector dimension mismatch");
  std::vector<double> y(static_cast<size_t>(t.dim), 0.0);
  for (int j = 0; j < t.dim; ++j) {
    y[static_cast<size_t>(j)] =
        static_cast<double>(t.diag[static_cast<size_t>(j)]) * std::pow(x[static_cast<size_t>(j)], t.order - 1);
  }
  if (t.edge_coeff != 0) {
    for (const Edge& e : t.graph.edges()) {
      for (int j : e) {
        double prod = 1.0;
        for (int v : e) {
          if (v != j) prod *= x[static_cast<size_t>(v - 1)];
        }
        y[static_cast<size_t>(j - 1)] += t.edge_coeff * prod;
      }
    }
  }
  return y;
}

std::vector<double> apply(const DenseTensor& t, std::span<const double> x) {
  if (static_cast<int>(x.size()) != t.dim()) throw std::invalid_argument("vector dimension mismatch");
  if (t.order() < 2) throw std::invalid_argument("apply needs order at least 2");
  const int n = t.dim();
  const int tail = t.order() - 1;
  std::vector<double> y(static_cast<size_t>(n), 0.0);
  std::vector<int> idx(static_cast<size_t>(t.order()), 1);
  for (int j = 1; j <= n; ++j) {
    idx[0] = j;
    std::fill(idx.begin() + 1, idx.end(), 1);
    double acc = 0.0;
    for (;;) {
      double prod = t.at(idx).to_double();
      if (prod != 0.0) {
        for (int p = 1; p <= tail; ++p) prod *= x[static_cast<size_t>(idx[static_cast<size_t>(p)] - 1)];
        acc += prod;
      }
      int p = tail;
      while (p >= 1 && idx[static_cast<size_t>(p)] == n) {
        idx[static_cast<size_t>(p)] = 1;
        --p;
      }
      if (p < 1) break;
      ++idx[static_cast<size_t>(p)];
    }
    y[static_cast<size_t>(j - 1)] = acc;
  }
  return y;
}

DenseTensor general_product(const DenseTensor& a, const DenseTensor& b, long long entry_cap) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  if (a.order() < 2) throw std::invalid_argument("left operand needs order at least 2");
  const int n = a.dim();
  const int m = a.order();
  const int k = b.order();
  const int out_order = (m - 1) * (k - 1) + 1;
  DenseTensor c(out_order, n, entry_cap);

  std::vector<int> out_idx(static_cast<size_t>(out_order), 1);
  std::vector<int> sum_idx(static_cast<size_t>(m), 1);     // a-index; [0] mirrors out_idx[0]
  std::vector<int> b_idx(static_cast<size_t>(k), 1);
  for (;;) {
    Rat acc(0);
    std::fill(sum_idx.begin(), sum_idx.end(), 1);
    sum_idx[0] = out_idx[0];
    for (;;) {
      const Rat& av = a.at(sum_idx);
      if (!av.is_zero()) {
        Rat term = av;
        for (int l = 1; l < m; ++l) {
          // b index: i_{l+1} followed by the l-th (k-1)-group of out_idx
          b_idx[0] = sum_idx[static_cast<size_t>(l)];
          for (int p = 1; p < k; ++p) {
            b_idx[static_cast<size_t>(p)] = out_idx[static_cast<size_t>(1 + (l - 1) * (k - 1) + (p - 1))];
          }
          term *= b.at(b_idx);
          if (term.is_zero()) break;
        }
        acc += term;
      }
      int p = m - 1;
      while (p >= 1 && sum_idx[static_cast<size_t>(p)] == n) {
        sum_idx[static_cast<size_t>(p)] = 1;
        --p;
      }
      if (p < 1) break;
      ++sum_idx[static_cast<size_t>(p)];
    }
    c.at(out_idx) = acc;

    int p = out_order - 1;
    while (p >= 0 && out_idx[static_cast<size_t>(p)] == n) {
      out_idx[static_cast<size_t>(p)] = 1;
      --p;
    }
    if (p < 0) break;
    ++out_idx[static_cast<size_t>(p)];
  }
  return c;
}

namespace {

/// Strong-connectivity test with a closed-set witness: the forward-reachable
/// set of vertex 1 is closed under outgoing arcs; if it is proper it is a
/// witness, otherwise the complement of the backward-reachable set is.
WeakIrreducibility check_digraph(int n, const std::vector<std::vector<int>>& fwd,
                                 const std::vector<std::vector<int>>& bwd) {
  if (n == 1) return {true, {}};
  auto reach = [n](const std::vector<std::vector<int>>& adj) {
    std::vector<std::uint8_t> seen(static_cast<size_t>(n), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[static_cast<size_t>(u)]) {
        if (!seen[static_cast<size_t>(v)]) {
          seen[static_cast<size_t>(v)] = 1;
          q.push(v);
        }
      }
    }
    return seen;
  };
  const auto fw = reach(fwd);
  if (std::find(fw.begin(), fw.end(), 0) != fw.end()) {
    WeakIrreducibility out{false, {}};
    for (int v = 0; v < n; ++v) {
      if (fw[static_cast<size_t>(v)]) out.witness.push_back(v + 1);
    }
    return out;
  }
  const auto bw = reach(bwd);
  if (std::find(bw.begin(), bw.end(), 0) != bw.end()) {
    WeakIrreducibility out{false, {}};
    for (int v = 0; v < n; ++v) {
      if (!bw[static_cast<size_t>(v)]) out.witness.push_back(v + 1);
    }
    return out;
  }
  return {true, {}};
}

}  // namespace

WeakIrreducibility is_weakly_irreducible(const HgTensor& t) {
  const int n = t.dim;
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  if (t.edge_coeff != 0) {
    for (const Edge& e : t.graph.edges()) {
      for (int u : e) {
        for (int v : e) {
          if (u != v) adj[static_cast<size_t>(u - 1)].push_back(v - 1);
        }
      }
    }
  }
  return check_digraph(n, adj, adj);  // arcs are symmetric here
}

WeakIrreducibility is_weakly_irreducible(const DenseTensor& t) {
  if (t.order() < 2) throw std::invalid_argument("weak irreducibility needs order at least 2");
  const int n = t.dim();
  std::vector<std::vector<int>> fwd(static_cast<size_t>(n)), bwd(static_cast<size_t>(n));
  std::vector<std::vector<std::uint8_t>> arc(static_cast<size_t>(n),
                                             std::vector<std::uint8_t>(static_cast<size_t>(n), 0));
  std::vector<int> idx(static_cast<size_t>(t.order()), 1);
  for (;;) {
    if (!t.at(idx).is_zero()) {
      const int i = idx[0] - 1;
      for (size_t p = 1; p < idx.size(); ++p) {
        const int j = idx[p] - 1;
        if (j != i) arc[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
      }
    }
    int p = t.order() - 1;
    while (p >= 0 && idx[static_cast<size_t>(p)] == n) {
      idx[static_cast<size_t>(p)] = 1;
      --p;
    }
    if (p < 0) break;
    ++idx[static_cast<size_t>(p)];
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (arc[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
        fwd[static_cast<size_t>(i)].push_back(j);
        bwd[static_cast<size_t>(j)].push_back(i);
      }
    }
  }
  return check_digraph(n, fwd, bwd);
}

DiagConjugation similarity_conjugate(const HgTensor& t, const DiagonalSimilarity& u) {
  if (u.modulus != t.order) throw std::invalid_argument("modulus mismatch");
  if (static_cast<int>(u.exponents.size()) != t.dim) throw std::invalid_argument("exponent count mismatch");
  const int r = t.order;
  auto canon = [r](long long v) {
    long long c = v % r;
    return static_cast<int>(c < 0 ? c + r : c);
  };

  DiagConjugation out;
  out.modulus = r;
  out.diag_exponents.reserve(static_cast<size_t>(t.dim));
  for (int j = 0; j < t.dim; ++j) {
    const long long k = u.exponents[static_cast<size_t>(j)];
    out.diag_exponents.push_back(canon((r - 1) * k - (r - 1) * k));
  }
  if (t.edge_coeff != 0) {
    const auto& edges = t.graph.edges();
    for (size_t e = 0; e < edges.size(); ++e) {
      long long total = 0;
      for (int v : edges[e]) total += u.exponents[static_cast<size_t>(v - 1)];
      for (int lead : edges[e]) {
        const long long k1 = u.exponents[static_cast<size_t>(lead - 1)];
        const long long s = (total - k1) - static_cast<long long>(r - 1) * k1;
        out.adjacency.push_back({static_cast<int>(e), lead, canon(s)});
      }
    }
  }
  return out;
}

namespace {

/// A conjugated tensor equals its entrywise negation on the adjacency part
/// exactly when every adjacency exponent is r/2; the diagonal must stay
/// fixed (exponent 0).
SimilarityCertificate certify_negating_conjugation(const HgTensor& t, const DiagonalSimilarity& u) {
  const int r = t.order;
  const DiagConjugation conj = similarity_conjugate(t, u);
  SimilarityCertificate cert;
  cert.similarity = u;
  for (const ConjugatedEntry& entry : conj.adjacency) {
    if (entry.exponent != r / 2) ++cert.exponent_violations;
  }
  for (int s : conj.diag_exponents) {
    if (s != 0) ++cert.exponent_violations;  // cannot happen; counted for completeness
  }
  cert.certified = cert.exponent_violations == 0;
  return cert;
}

DiagonalSimilarity coloring_similarity(const Hypergraph& g, const OddColoring& c) {
  DiagonalSimilarity u{g.r(), {}};
  u.exponents.reserve(c.phi.size());
  for (int v : c.phi) u.exponents.push_back(v % g.r());
  return u;
}

}  // namespace

SimilarityCertificate certify_spectrum_symmetry(const Hypergraph& g, const OddColoring& c) {
  if (g.r() % 2 != 0) throw std::invalid_argument("spectrum symmetry requires even uniformity");
  if (!check_odd_coloring(g, c)) throw std::invalid_argument("certificate refused: not a valid odd-coloring");
  return certify_negating_conjugation(adjacency_tensor(g), coloring_similarity(g, c));
}

SimilarityCertificate certify_lq_similarity(const Hypergraph& g, const OddColoring& c) {
  if (g.r() % 2 != 0) throw std::invalid_argument("similarity requires even uniformity");
  if (!check_odd_coloring(g, c)) throw std::invalid_argument("certificate refused: not a valid odd-coloring");
  // Conjugating Q fixes its diagonal and negates the adjacency part, i.e.
  // carries D + A to D - A = L.
  return certify_negating_conjugation(signless_laplacian(g), coloring_similarity(g, c));
}

SimilarityCertificate sign_similarity(const Hypergraph& g, const OddBipartition& b) {
  if (g.r() % 2 != 0) throw std::invalid_argument("sign similarity requires even uniformity");
  if (!check_odd_bipartition(g, b)) throw std::invalid_argument("certificate refused: not a valid odd bipartition");
  DiagonalSimilarity s{g.r(), std::vector<int>(static_cast<size_t>(g.n()), 0)};
  for (int v : b.part) s.exponents[static_cast<size_t>(v - 1)] = g.r() / 2;
  return certify_negating_conjugation(signless_laplacian(g), s);
}

}  // namespace oddhg
