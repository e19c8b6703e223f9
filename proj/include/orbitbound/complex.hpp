#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "orbitbound/linalg.hpp"
#include "orbitbound/novikov.hpp"
#include "orbitbound/representation.hpp"

namespace orbitbound {

/// Either Z with a finite support window [lo, hi], or Z/k. Degrees are stored
/// by index: index i is degree lo + i, or residue i.
struct Grading {
  bool cyclic = false;
  int lo = 0;
  int hi = 0;
  int modulus = 0;

  static Grading integers(int lo, int hi);
  static Grading residues(int k);

  std::size_t count() const { return cyclic ? static_cast<std::size_t>(modulus) : static_cast<std::size_t>(hi - lo + 1); }
  int degree(std::size_t index) const { return cyclic ? static_cast<int>(index) : lo + static_cast<int>(index); }
  /// Index of degree - 1, if that degree carries a module slot.
  std::optional<std::size_t> below(std::size_t index) const;
  std::optional<std::size_t> above(std::size_t index) const;
  std::optional<std::size_t> index_of(int degree) const;
  friend bool operator==(const Grading&, const Grading&) = default;
};

/// Matrix over Ring((T)) with Ring = Z[G] or F_p[G], in an exact context
/// (entries are finite, monomials optional).
class GroupRingMatrix {
 public:
  GroupRingMatrix(GroupRing ring, ContextPtr context, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const GroupRing& ring() const { return ring_; }
  const ContextPtr& context() const { return ctx_; }

  const GroupRingSeries& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, GroupRingSeries value);

  bool is_zero() const;
  /// True if some entry has a term with a nonzero exponent.
  bool has_monomials() const;

  friend GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingMatrix& b);
  friend bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b);

 private:
  GroupRing ring_;
  ContextPtr ctx_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GroupRingSeries> entries_;
};

/// Free complex in the row-vector convention: differentials[i] is the matrix
/// of d: C_deg -> C_{deg-1}, of shape ranks[i] x ranks[below(i)] (x 0 when the
/// target slot does not exist). Composites are D_{i+1} * D_i.
template <class Matrix>
struct ChainComplex {
  Grading grading;
  std::vector<std::size_t> ranks;
  std::vector<Matrix> differentials;
};

using GradedComplex = ChainComplex<GroupRingMatrix>;
using FieldComplex = ChainComplex<PrimeFieldMatrix>;

/// True iff every composite vanishes (cyclically for Z/k). Throws DomainError
/// naming the degree on a shape mismatch.
bool check_complex(const GradedComplex& c);
bool check_complex(const FieldComplex& c);

/// Block matrix of sum a_g rho(g) for each entry. Entries must carry no
/// monomials; coefficients are reduced mod p.
PrimeFieldMatrix tensor_matrix(const GroupRingMatrix& m, const Representation& rho);
FieldComplex tensor_with_rep(const GradedComplex& c, const Representation& rho);

/// dim ker d_i - rank d_{i+1}, per index.
std::vector<std::size_t> homology_dims(const FieldComplex& c);

/// b_i(C, rho) per index. Without monomials this is homology_dims of
/// tensor_with_rep; with monomials the ranks are taken over F_p(T) by exact
/// elimination on Laurent polynomials.
std::vector<std::size_t> local_betti_numbers(const GradedComplex& c, const Representation& rho);

/// Betti numbers over Q of C tensored with the trivial representation.
std::vector<std::size_t> rational_betti_numbers(const GradedComplex& c);

/// Rank over the fraction field of Laurent polynomials (entries in an exact
/// context, coefficients in Z or F_p).
std::size_t laurent_rank(std::vector<std::vector<ScalarSeries>> rows);

/// C°_i = direct sum of C_s over s = i mod k, blocks in increasing s.
GradedComplex fold(const GradedComplex& c, int k);
FieldComplex fold(const FieldComplex& c, int k);
/// Fold of a rank or Betti profile given by Z-degree.
std::vector<std::size_t> fold_profile(const Grading& grading, const std::vector<std::size_t>& values, int k);

/// Zero-differential complex with ranks = homology dims, plus chain maps
/// include: model -> C (rows are cycle representatives) and project: C -> model,
/// with include * project = I, D * project = 0 and include * D = 0.
struct MinimalModel {
  FieldComplex model;
  std::vector<PrimeFieldMatrix> include;
  std::vector<PrimeFieldMatrix> project;
};
MinimalModel minimal_model_over_field(const FieldComplex& c);

/// Strong Morse inequalities from the lowest degree up: for each index k,
/// lhs[k] = sum_{j<=k} (-1)^(k-j) ranks[j] and rhs[k] likewise for betti.
struct MorseInequalities {
  std::vector<long long> lhs;
  std::vector<long long> rhs;
  bool hold() const;
};
MorseInequalities strong_morse_inequalities(const std::vector<std::size_t>& ranks, const std::vector<std::size_t>& betti);

}  // namespace orbitbound
