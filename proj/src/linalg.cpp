#include "orbitbound/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace orbitbound {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<std::uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t result = 1 % p;
  std::uint32_t base = a % p;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
  return pow(a, p - 2);
}

PrimeFieldMatrix::PrimeFieldMatrix(std::uint32_t prime, std::size_t rows, std::size_t cols)
    : prime_(prime), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (prime < 2) throw std::invalid_argument("matrix modulus must be at least 2");
}

PrimeFieldMatrix PrimeFieldMatrix::identity(std::uint32_t prime, std::size_t n) {
  PrimeFieldMatrix m(prime, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % prime;
  return m;
}

PrimeFieldMatrix PrimeFieldMatrix::from_rows(std::uint32_t prime,
                                             const std::vector<std::vector<long long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  PrimeFieldMatrix m(prime, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void PrimeFieldMatrix::set(std::size_t i, std::size_t j, long long value) {
  data_[i * cols_ + j] = field().reduce(value);
}

void PrimeFieldMatrix::add_to(std::size_t i, std::size_t j, std::uint32_t value) {
  auto& e = data_[i * cols_ + j];
  e = field().add(e, value);
}

bool PrimeFieldMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t x) { return x == 0; });
}

PrimeFieldMatrix PrimeFieldMatrix::transpose() const {
  PrimeFieldMatrix t(prime_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

PrimeFieldMatrix PrimeFieldMatrix::scaled(std::uint32_t factor) const {
  PrimeFieldMatrix out = *this;
  const PrimeField f = field();
  for (auto& x : out.data_) x = f.mul(x, factor % prime_);
  return out;
}

void PrimeFieldMatrix::place_block(std::size_t row, std::size_t col, const PrimeFieldMatrix& b) {
  if (row + b.rows_ > rows_ || col + b.cols_ > cols_) throw std::out_of_range("block does not fit");
  for (std::size_t i = 0; i < b.rows_; ++i)
    std::copy_n(b.data_.begin() + static_cast<std::ptrdiff_t>(i * b.cols_), b.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((row + i) * cols_ + col));
}

PrimeFieldMatrix PrimeFieldMatrix::block(std::size_t row, std::size_t col, std::size_t rows,
                                         std::size_t cols) const {
  if (row + rows > rows_ || col + cols > cols_) throw std::out_of_range("block out of range");
  PrimeFieldMatrix b(prime_, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) b.data_[i * cols + j] = (*this)(row + i, col + j);
  return b;
}

PrimeFieldMatrix operator*(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
  if (a.prime_ != b.prime_) throw std::invalid_argument("matrix primes differ");
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not compose");
  PrimeFieldMatrix c(a.prime_, a.rows_, b.cols_);
  const std::uint64_t p = a.prime_;
  std::vector<std::uint64_t> acc(b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t x = a.data_[i * a.cols_ + k];
      if (x == 0) continue;
      const std::uint32_t* brow = b.data_.data() + k * b.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        acc[j] += x * brow[j];
        if (acc[j] >= (1ULL << 62)) acc[j] %= p;
      }
    }
    for (std::size_t j = 0; j < b.cols_; ++j)
      c.data_[i * c.cols_ + j] = static_cast<std::uint32_t>(acc[j] % p);
  }
  return c;
}

PrimeFieldMatrix operator+(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
  if (a.prime_ != b.prime_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix sum shape mismatch");
  PrimeFieldMatrix c = a;
  const PrimeField f = a.field();
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = f.add(a.data_[i], b.data_[i]);
  return c;
}

PrimeFieldMatrix operator-(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
  if (a.prime_ != b.prime_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix difference shape mismatch");
  PrimeFieldMatrix c = a;
  const PrimeField f = a.field();
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = f.sub(a.data_[i], b.data_[i]);
  return c;
}

std::string PrimeFieldMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

FieldVector vector_times(std::span<const std::uint32_t> v, const PrimeFieldMatrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vector length does not match matrix");
  const std::uint64_t p = m.prime();
  std::vector<std::uint64_t> acc(m.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::uint64_t x = v[k];
    if (x == 0) continue;
    auto row = m.row(k);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      acc[j] += x * row[j];
      if (acc[j] >= (1ULL << 62)) acc[j] %= p;
    }
  }
  FieldVector out(m.cols());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = static_cast<std::uint32_t>(acc[j] % p);
  return out;
}

EchelonForm row_reduce(const PrimeFieldMatrix& m) {
  EchelonForm result{m, {}};
  PrimeFieldMatrix& a = result.reduced;
  const PrimeField f = a.field();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t found = a.rows();
    for (std::size_t r = pivot_row; r < a.rows(); ++r) {
      if (a(r, col) != 0) {
        found = r;
        break;
      }
    }
    if (found == a.rows()) continue;
    if (found != pivot_row) {
      auto x = a.row(found);
      auto y = a.row(pivot_row);
      std::swap_ranges(x.begin(), x.end(), y.begin());
    }
    auto prow = a.row(pivot_row);
    const std::uint32_t scale = f.inv(prow[col]);
    for (auto& x : prow) x = f.mul(x, scale);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == pivot_row) continue;
      const std::uint32_t factor = a(r, col);
      if (factor == 0) continue;
      auto row = a.row(r);
      for (std::size_t j = col; j < a.cols(); ++j) row[j] = f.sub(row[j], f.mul(factor, prow[j]));
    }
    result.pivot_cols.push_back(col);
    ++pivot_row;
  }
  return result;
}

std::size_t rank_mod_p(const PrimeFieldMatrix& m) { return row_reduce(m).pivot_cols.size(); }

std::vector<FieldVector> kernel_basis(const PrimeFieldMatrix& m) {
  const EchelonForm e = row_reduce(m);
  const PrimeField f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<FieldVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    FieldVector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) v[e.pivot_cols[k]] = f.neg(e.reduced(k, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<FieldVector> left_kernel_basis(const PrimeFieldMatrix& m) {
  return kernel_basis(m.transpose());
}

std::optional<PrimeFieldMatrix> inverse(const PrimeFieldMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  PrimeFieldMatrix aug(m.prime(), n, 2 * n);
  aug.place_block(0, 0, m);
  aug.place_block(0, n, PrimeFieldMatrix::identity(m.prime(), n));
  const EchelonForm e = row_reduce(aug);
  if (e.pivot_cols.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1)) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

Subspace::Subspace(std::uint32_t prime, std::size_t ambient_dim) : field_{prime}, n_(ambient_dim) {}

FieldVector Subspace::reduce(FieldVector v) const {
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const std::uint32_t c = v[pivots_[k]];
    if (c == 0) continue;
    const auto& b = basis_[k];
    for (std::size_t j = pivots_[k]; j < n_; ++j) v[j] = field_.sub(v[j], field_.mul(c, b[j]));
  }
  return v;
}

bool Subspace::contains(std::span<const std::uint32_t> v) const {
  const FieldVector r = reduce(FieldVector(v.begin(), v.end()));
  return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

bool Subspace::insert(std::span<const std::uint32_t> v) {
  if (v.size() != n_) throw std::invalid_argument("vector dimension mismatch");
  FieldVector r = reduce(FieldVector(v.begin(), v.end()));
  std::size_t lead = n_;
  for (std::size_t j = 0; j < n_; ++j) {
    if (r[j] != 0) {
      lead = j;
      break;
    }
  }
  if (lead == n_) return false;
  const std::uint32_t s = field_.inv(r[lead]);
  for (auto& x : r) x = field_.mul(x, s);
  // Clear the new pivot column from existing rows to stay in RREF.
  for (auto& b : basis_) {
    const std::uint32_t c = b[lead];
    if (c == 0) continue;
    for (std::size_t j = lead; j < n_; ++j) b[j] = field_.sub(b[j], field_.mul(c, r[j]));
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, lead);
  basis_.insert(basis_.begin() + pos, std::move(r));
  return true;
}

std::vector<std::size_t> Subspace::non_pivots() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    if (k < pivots_.size() && pivots_[k] == j) {
      ++k;
      continue;
    }
    out.push_back(j);
  }
  return out;
}

FieldVector Subspace::coordinates(std::span<const std::uint32_t> v) const {
  FieldVector c(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

PrimeFieldMatrix Subspace::basis_matrix() const {
  PrimeFieldMatrix m(field_.p, basis_.size(), n_);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    std::copy(basis_[i].begin(), basis_[i].end(), m.row(i).begin());
  return m;
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not compose");
  IntegerMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_target -= q * row_source
void add_row_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const BigInt& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) -= q * m(source, j);
}

void add_col_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const BigInt& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) -= q * m(i, source);
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  IntegerMatrix u = IntegerMatrix::identity(m.rows());
  IntegerMatrix v = IntegerMatrix::identity(m.cols());
  const std::size_t limit = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    // Smallest nonzero |entry| in the trailing block, first in row-major order.
    std::size_t pr = a.rows(), pc = a.cols();
    BigInt best;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (a(i, j) == 0) continue;
        BigInt mag = abs(a(i, j));
        if (pr == a.rows() || mag < best) {
          best = mag;
          pr = i;
          pc = j;
        }
      }
    if (pr == a.rows()) break;
    swap_rows(a, t, pr);
    swap_rows(u, t, pr);
    swap_cols(a, t, pc);
    swap_cols(v, t, pc);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        const BigInt q = a(i, t) / a(t, t);
        add_row_multiple(a, i, t, q);
        add_row_multiple(u, i, t, q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        const BigInt q = a(t, j) / a(t, t);
        add_col_multiple(a, j, t, q);
        add_col_multiple(v, j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t into the pivot.
        std::size_t bi = t, bj = t;
        BigInt bmag = abs(a(t, t));
        for (std::size_t i = t + 1; i < a.rows(); ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < bmag) {
            bmag = abs(a(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < bmag) {
            bmag = abs(a(t, j));
            bi = t;
            bj = j;
          }
        swap_rows(a, t, bi);
        swap_rows(u, t, bi);
        swap_cols(a, t, bj);
        swap_cols(v, t, bj);
        continue;
      }
      // Pivot must divide the whole trailing block.
      std::size_t bad = a.rows();
      for (std::size_t i = t + 1; i < a.rows() && bad == a.rows(); ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == a.rows()) break;
      add_row_multiple(a, t, bad, BigInt(-1));
      add_row_multiple(u, t, bad, BigInt(-1));
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < a.cols(); ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < u.cols(); ++j) u(t, j) = -u(t, j);
    }
  }
  return SmithForm{std::move(u), std::move(a), std::move(v)};
}

std::vector<BigInt> SmithForm::invariant_factors() const {
  std::vector<BigInt> out;
  const std::size_t limit = std::min(diagonal.rows(), diagonal.cols());
  for (std::size_t i = 0; i < limit; ++i) out.push_back(diagonal(i, i));
  return out;
}

BigInt determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap == n) return 0;
      swap_rows(a, k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank_over_rationals(const IntegerMatrix& m) {
  std::size_t r = 0;
  for (const BigInt& d : smith_normal_form(m).invariant_factors())
    if (d != 0) ++r;
  return r;
}

}  // namespace orbitbound
