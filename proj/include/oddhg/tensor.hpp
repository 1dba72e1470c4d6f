#pragma once

#include <span>
#include <vector>

#include "oddhg/coloring.hpp"
#include "oddhg/hypergraph.hpp"
#include "oddhg/rational.hpp"

namespace oddhg {

/// Order-r dimension-n symmetric tensor carried by its hypergraph: a diagonal
/// vector plus a signed coefficient on edge index permutations. Never
/// materializes n^r entries; every operation is edge-driven.
struct HgTensor {
  int order = 2;
  int dim = 1;
  std::vector<long long> diag;
  int edge_coeff = 0;  // +1 adjacency part, -1 negated, 0 diagonal-only
  Hypergraph graph;

  /// Entry at a full multi-index (1-based). Edge entries carry the
  /// 1/(r-1)! normalization at this reporting boundary only.
  Rat entry(std::span<const int> index) const;
};

HgTensor adjacency_tensor(const Hypergraph& g);
HgTensor degree_tensor(const Hypergraph& g);
HgTensor laplacian(const Hypergraph& g);
HgTensor signless_laplacian(const Hypergraph& g);

/// Dense order-m dimension-n tensor with exact rational entries, row-major.
/// Intended for small demonstrations and the dimension-2 spectrum engine;
/// construction rejects entry counts above the cap.
class DenseTensor {
 public:
  DenseTensor(int order, int dim, long long entry_cap = kDefaultEntryCap);

  int order() const { return order_; }
  int dim() const { return dim_; }
  const std::vector<Rat>& entries() const { return entries_; }

  Rat& at(std::span<const int> index);
  const Rat& at(std::span<const int> index) const;
  Rat& at(std::initializer_list<int> index) { return at(std::span<const int>(index.begin(), index.size())); }
  const Rat& at(std::initializer_list<int> index) const {
    return at(std::span<const int>(index.begin(), index.size()));
  }

  static constexpr long long kDefaultEntryCap = 1LL << 24;

 private:
  size_t linear(std::span<const int> index) const;
  int order_;
  int dim_;
  std::vector<Rat> entries_;
};

/// Unit tensor: 1 on the diagonal, 0 elsewhere.
DenseTensor unit_tensor(int order, int dim);

/// Entrywise negation.
DenseTensor negate(const DenseTensor& t);

/// Materializes an HgTensor (cap-checked).
DenseTensor to_dense(const HgTensor& t, long long entry_cap = DenseTensor::kDefaultEntryCap);

/// (Tx)_j = sum over index tuples of T_{j j2...jr} x_{j2}...x_{jr}. For
/// HgTensor the permutations cancel the 1/(r-1)! factor, leaving
/// diag_j x_j^{r-1} + coeff * sum over edges at j of the product of the
/// other vertices' entries.
std::vector<double> apply(const HgTensor& t, std::span<const double> x);
std::vector<double> apply(const DenseTensor& t, std::span<const double> x);

/// C_{i a1...a_{m-1}} = sum_{i2..im} A_{i i2..im} B_{i2 a1} ... B_{im a_{m-1}}
/// with each a_l a (k-1)-tuple; result order (m-1)(k-1)+1. Exact.
DenseTensor general_product(const DenseTensor& a, const DenseTensor& b,
                            long long entry_cap = DenseTensor::kDefaultEntryCap);

struct WeakIrreducibility {
  bool irreducible = false;
  std::vector<int> witness;  // proper subset with no arcs leaving it, 1-based
};

/// Strong connectivity of the representation digraph (arc i -> j when some
/// entry with first index i involves j).
WeakIrreducibility is_weakly_irreducible(const HgTensor& t);
WeakIrreducibility is_weakly_irreducible(const DenseTensor& t);

/// Exponent vector k over Z_r for U = diag(w^{k_1}, ..., w^{k_n}),
/// w = exp(2*pi*i/r).
struct DiagonalSimilarity {
  int modulus = 2;
  std::vector<int> exponents;
};

struct ConjugatedEntry {
  int edge_index = 0;
  int lead_vertex = 0;  // first index of the entry
  int exponent = 0;     // entry picks up factor w^exponent
};

/// Exact symbolic description of U^{-(r-1)} T U: each structural entry keeps
/// its value times w^s with s = k_{j2}+...+k_{jr} - (r-1) k_{j1} mod r.
struct DiagConjugation {
  int modulus = 2;
  std::vector<int> diag_exponents;        // always 0: the shift cancels
  std::vector<ConjugatedEntry> adjacency; // one per (edge, lead vertex)
};

DiagConjugation similarity_conjugate(const HgTensor& t, const DiagonalSimilarity& u);

struct SimilarityCertificate {
  bool certified = false;
  long long exponent_violations = 0;
  DiagonalSimilarity similarity;
};

/// With U exponents set to the coloring, checks by exact exponent arithmetic
/// that conjugating the adjacency tensor negates every entry (exponent r/2
/// everywhere), which makes the spectrum symmetric about the origin. Invalid
/// colorings are rejected with std::invalid_argument, not reported false.
SimilarityCertificate certify_spectrum_symmetry(const Hypergraph& g, const OddColoring& c);

/// Same exponent check plus the fixed diagonal: certifies that the
/// conjugation carries the signless Laplacian to the Laplacian, so the two
/// share their spectrum.
SimilarityCertificate certify_lq_similarity(const Hypergraph& g, const OddColoring& c);

/// Real +-1 similarity from an odd bipartition (exponent r/2 on the chosen
/// side); certifies the same Q -> L conjugation and transports real
/// eigenpairs between them.
SimilarityCertificate sign_similarity(const Hypergraph& g, const OddBipartition& b);

}  // namespace oddhg
