#pragma once

#include <complex>
#include <span>
#include <vector>

#include "oddhg/tensor.hpp"

namespace oddhg {

struct EigenPair {
  double lambda = 0.0;
  std::vector<double> x;
  double residual = 0.0;  // max-norm of T x - lambda x^{[r-1]} at unit max-norm x
};

/// Thrown when an iterative numeric kernel fails to reach its tolerance.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NqzOptions {
  double tol = 1e-10;
  long long max_iter = 100000;
};

/// Power-iteration result for a nonnegative weakly irreducible tensor. The
/// iteration runs on T + I (unit diagonal shift, which moves every
/// H-eigenvalue up by exactly 1) and reports two-sided Collatz-Wielandt
/// brackets; convergence means bracket width <= tol. Non-convergence is a
/// result, not an exception: converged=false with the final bracket.
struct NqzResult {
  EigenPair pair;
  bool converged = false;
  long long iterations = 0;
  double bracket_lo = 0.0;  // brackets for rho(T), shift already removed
  double bracket_hi = 0.0;
  bool bracket_monotone = true;  // checked every iteration; violations throw
};

/// Throws std::invalid_argument when the tensor has negative entries or is
/// weakly reducible (run components separately instead).
NqzResult nqz_spectral_radius(const HgTensor& t, const NqzOptions& opts = {});
NqzResult nqz_spectral_radius(const DenseTensor& t, const NqzOptions& opts = {});

/// Max-norm of T x - lambda x^{[r-1]} after scaling x to unit max-norm.
double eigen_residual(const HgTensor& t, double lambda, std::span<const double> x);
double eigen_residual(const DenseTensor& t, double lambda, std::span<const double> x);

/// Moves an eigenpair of `from` across a certified real diagonal similarity
/// (exponents 0 or r/2): the transported vector is the entrywise signed copy
/// of x and keeps the eigenvalue. Verifies the similarity actually maps
/// `from` to `to` and that the residual does not grow beyond slack.
EigenPair transport_eigenpair(const EigenPair& pair, const DiagonalSimilarity& s, const HgTensor& from,
                              const HgTensor& to, double verify_tol = 1e-8);

/// Characteristic polynomial det(lambda I - T) of a dimension-2 tensor,
/// exact coefficients ascending by degree; degree is 2(r-1) and the
/// polynomial is monic.
struct CharPoly {
  std::vector<Rat> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Sylvester resultant of the two eigen-equation binary forms, with the
/// polynomial-in-lambda entries expanded exactly (integer-point evaluation
/// plus Newton interpolation over rationals).
CharPoly charpoly_dim2(const DenseTensor& t);

struct SpectrumMultiset {
  std::vector<std::pair<std::complex<double>, int>> roots;  // (root, multiplicity)
  int total_multiplicity() const;
};

/// Roots of the dimension-2 characteristic polynomial with exact
/// multiplicities (square-free decomposition first, then simultaneous
/// root iteration on each square-free factor), clustered at cluster_tol.
SpectrumMultiset spectrum_dim2(const DenseTensor& t, double cluster_tol = 1e-7);

/// True when the multiset is invariant under negation within tol.
bool is_symmetric_spectrum(const SpectrumMultiset& s, double tol);

enum class MatrixKind { kAdjacency, kSignlessLaplacian };

struct RhoResult {
  double rho = 0.0;
  bool converged = false;
  std::vector<double> component_rhos;
};

/// Spectral radius computed per connected component (each component's tensor
/// is weakly irreducible); the union spectrum makes the maximum equal to the
/// whole graph's radius.
RhoResult rho_by_components(const Hypergraph& g, MatrixKind which, double tol);

}  // namespace oddhg
