#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace orbitbound {

using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n);

/// Prime divisors of n in increasing order (empty for n <= 1).
std::vector<std::uint32_t> prime_divisors(std::uint64_t n);

/// Arithmetic in the prime field F_p, p < 2^31.
struct PrimeField {
  std::uint32_t p;

  std::uint32_t reduce(long long x) const {
    long long r = x % static_cast<long long>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// Inverse of a nonzero residue (Fermat).
  std::uint32_t inv(std::uint32_t a) const;
};

/// Dense matrix over F_p, row-major. Entries always lie in [0, p).
class PrimeFieldMatrix {
 public:
  PrimeFieldMatrix() : prime_(2), rows_(0), cols_(0) {}
  PrimeFieldMatrix(std::uint32_t prime, std::size_t rows, std::size_t cols);

  static PrimeFieldMatrix identity(std::uint32_t prime, std::size_t n);
  /// Entries are reduced mod prime; all rows must have equal length.
  static PrimeFieldMatrix from_rows(std::uint32_t prime,
                                    const std::vector<std::vector<long long>>& rows);

  std::uint32_t prime() const { return prime_; }
  PrimeField field() const { return PrimeField{prime_}; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, long long value);
  /// Adds value (already a residue) into entry (i, j).
  void add_to(std::size_t i, std::size_t j, std::uint32_t value);

  std::span<const std::uint32_t> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  bool is_zero() const;
  PrimeFieldMatrix transpose() const;
  PrimeFieldMatrix scaled(std::uint32_t factor) const;

  /// Copies `block` into this matrix with its top-left corner at (row, col).
  void place_block(std::size_t row, std::size_t col, const PrimeFieldMatrix& block);
  PrimeFieldMatrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;

  friend PrimeFieldMatrix operator*(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b);
  friend PrimeFieldMatrix operator+(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b);
  friend PrimeFieldMatrix operator-(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b);
  friend bool operator==(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) = default;

  std::string to_string() const;

 private:
  std::uint32_t prime_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

using FieldVector = std::vector<std::uint32_t>;

/// Row vector times matrix.
FieldVector vector_times(std::span<const std::uint32_t> v, const PrimeFieldMatrix& m);

/// Reduced row echelon form. Pivots are the first nonzero entry scanning
/// columns left to right, rows top to bottom.
struct EchelonForm {
  PrimeFieldMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

EchelonForm row_reduce(const PrimeFieldMatrix& m);
std::size_t rank_mod_p(const PrimeFieldMatrix& m);
inline std::size_t nullity(const PrimeFieldMatrix& m) { return m.cols() - rank_mod_p(m); }

/// Basis of { x : m x = 0 } (column kernel); cols(m) - rank(m) vectors.
std::vector<FieldVector> kernel_basis(const PrimeFieldMatrix& m);
/// Basis of { x : x m = 0 } (row-vector kernel).
std::vector<FieldVector> left_kernel_basis(const PrimeFieldMatrix& m);

std::optional<PrimeFieldMatrix> inverse(const PrimeFieldMatrix& m);

/// A subspace of F_p^n kept in reduced row echelon form, grown one vector at
/// a time. Used for spinning and for submodule/quotient coordinates.
class Subspace {
 public:
  Subspace(std::uint32_t prime, std::size_t ambient_dim);

  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient_dim() const { return n_; }
  std::uint32_t prime() const { return field_.p; }

  /// Reduces v modulo the subspace (clears every pivot column).
  FieldVector reduce(FieldVector v) const;
  bool contains(std::span<const std::uint32_t> v) const;
  /// Inserts v; returns false if v was already in the span.
  bool insert(std::span<const std::uint32_t> v);

  const std::vector<FieldVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Columns that carry no pivot, ascending; index the standard complement.
  std::vector<std::size_t> non_pivots() const;

  /// Coordinates of a vector of the subspace in terms of basis().
  FieldVector coordinates(std::span<const std::uint32_t> v) const;
  PrimeFieldMatrix basis_matrix() const;

 private:
  PrimeField field_;
  std::size_t n_;
  std::vector<FieldVector> basis_;  // RREF rows, each with leading 1 at pivots_[k]
  std::vector<std::size_t> pivots_;
};

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SmithForm {
  IntegerMatrix left;   // U
  IntegerMatrix diagonal;
  IntegerMatrix right;  // V
  std::vector<BigInt> invariant_factors() const;
};

SmithForm smith_normal_form(const IntegerMatrix& m);

/// Determinant by fraction-free elimination.
BigInt determinant(const IntegerMatrix& m);
std::size_t rank_over_rationals(const IntegerMatrix& m);

}  // namespace orbitbound
