#include "orbitbound/complex.hpp"

#include <algorithm>
#include <stdexcept>

#include "orbitbound/errors.hpp"

namespace orbitbound {

Grading Grading::integers(int lo, int hi) {
  if (hi < lo) throw DomainError("empty degree window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return Grading{false, lo, hi, 0};
}

Grading Grading::residues(int k) {
  if (k < 2) throw DomainError("cyclic grading needs modulus >= 2, got " + std::to_string(k));
  return Grading{true, 0, k - 1, k};
}

std::optional<std::size_t> Grading::below(std::size_t index) const {
  if (cyclic) return (index + count() - 1) % count();
  if (index == 0) return std::nullopt;
  return index - 1;
}

std::optional<std::size_t> Grading::above(std::size_t index) const {
  if (cyclic) return (index + 1) % count();
  if (index + 1 >= count()) return std::nullopt;
  return index + 1;
}

std::optional<std::size_t> Grading::index_of(int degree) const {
  if (cyclic) return static_cast<std::size_t>(((degree % modulus) + modulus) % modulus);
  if (degree < lo || degree > hi) return std::nullopt;
  return static_cast<std::size_t>(degree - lo);
}

GroupRingMatrix::GroupRingMatrix(GroupRing ring, ContextPtr context, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), ctx_(std::move(context)), rows_(rows), cols_(cols),
      entries_(rows * cols, GroupRingSeries(ctx_, ring_)) {
  if (ctx_->cutoff()) throw DomainError("group ring matrices need an exact (untruncated) context");
}

void GroupRingMatrix::set(std::size_t i, std::size_t j, GroupRingSeries value) {
  if (!(*value.context() == *ctx_) || !(value.ring() == ring_)) throw DomainError("matrix entry from another ring");
  entries_.at(i * cols_ + j) = std::move(value);
}

bool GroupRingMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const GroupRingSeries& s) { return s.is_zero(); });
}

bool GroupRingMatrix::has_monomials() const {
  for (const auto& s : entries_)
    for (const auto& [e, c] : s.terms())
      if (std::any_of(e.begin(), e.end(), [](long long x) { return x != 0; })) return true;
  return false;
}

GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("group ring matrix shape mismatch in product");
  GroupRingMatrix out(a.ring_, a.ctx_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const auto& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.cols_; ++k) {
        const auto& y = b(j, k);
        if (y.is_zero()) continue;
        out.entries_[i * out.cols_ + k] = out(i, k) + nov_mul(x, y);
      }
    }
  return out;
}

bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

namespace {

std::size_t rows_of(const PrimeFieldMatrix& m) { return m.rows(); }
std::size_t cols_of(const PrimeFieldMatrix& m) { return m.cols(); }
std::size_t rows_of(const GroupRingMatrix& m) { return m.rows(); }
std::size_t cols_of(const GroupRingMatrix& m) { return m.cols(); }

template <class Matrix>
void check_shapes(const ChainComplex<Matrix>& c) {
  const std::size_t n = c.grading.count();
  if (c.ranks.size() != n || c.differentials.size() != n)
    throw DomainError("complex needs a rank and a differential for each of its " + std::to_string(n) + " degrees");
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = c.grading.below(i);
    const std::size_t want_cols = b ? c.ranks[*b] : 0;
    const Matrix& d = c.differentials[i];
    if (rows_of(d) != c.ranks[i] || cols_of(d) != want_cols)
      throw DomainError("differential in degree " + std::to_string(c.grading.degree(i)) + " has shape " +
                        std::to_string(rows_of(d)) + "x" + std::to_string(cols_of(d)) + ", expected " +
                        std::to_string(c.ranks[i]) + "x" + std::to_string(want_cols));
  }
}

template <class Matrix>
bool composites_vanish(const ChainComplex<Matrix>& c) {
  check_shapes(c);
  for (std::size_t i = 0; i < c.grading.count(); ++i) {
    const auto up = c.grading.above(i);
    if (!up || !c.grading.below(i)) continue;
    if (!(c.differentials[*up] * c.differentials[i]).is_zero()) return false;
  }
  return true;
}

void check_group(const GroupRing& ring, const Representation& rho) {
  if (!ring.group || !rho.group || ring.group->order() != rho.group->order() ||
      ring.group->generators() != rho.group->generators())
    throw DomainError("complex and representation are over different groups");
  if (ring.modulus != 0 && ring.modulus != rho.prime)
    throw DomainError("complex has coefficients mod " + std::to_string(ring.modulus) + " but the representation is over F_" +
                      std::to_string(rho.prime));
}

bool has_monomials(const GradedComplex& c) {
  return std::any_of(c.differentials.begin(), c.differentials.end(),
                     [](const GroupRingMatrix& m) { return m.has_monomials(); });
}

PrimeFieldMatrix tensor_with_images(const GroupRingMatrix& m, const std::vector<PrimeFieldMatrix>& images,
                                    std::uint32_t p, std::size_t r) {
  const PrimeField f{p};
  PrimeFieldMatrix out(p, m.rows() * r, m.cols() * r);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [e, value] : m(i, j).terms()) {
        if (std::any_of(e.begin(), e.end(), [](long long x) { return x != 0; }))
          throw DomainError("entry carries Novikov monomials; use local_betti_numbers for its ranks");
        for (const auto& [g, coef] : value) {
          BigInt c = coef % p;
          if (c < 0) c += p;
          const std::uint32_t a = static_cast<std::uint32_t>(c);
          if (a == 0) continue;
          const PrimeFieldMatrix& rg = images[g];
          for (std::size_t x = 0; x < r; ++x)
            for (std::size_t y = 0; y < r; ++y)
              if (rg(x, y) != 0) out.add_to(i * r + x, j * r + y, f.mul(a, rg(x, y)));
        }
      }
  return out;
}

// Entry blocks sum_{e,g} a_{g,e} rho(g) t^e as Laurent polynomials over F_p.
std::vector<std::vector<ScalarSeries>> laurent_blocks(const GroupRingMatrix& m, const std::vector<PrimeFieldMatrix>& images,
                                                      std::uint32_t p, std::size_t r) {
  const ScalarRing ring{p};
  std::vector<std::vector<ScalarSeries>> out(m.rows() * r,
                                             std::vector<ScalarSeries>(m.cols() * r, ScalarSeries(m.context(), ring)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [e, value] : m(i, j).terms())
        for (const auto& [g, coef] : value)
          for (std::size_t x = 0; x < r; ++x)
            for (std::size_t y = 0; y < r; ++y)
              if (images[g](x, y) != 0) out[i * r + x][j * r + y].add_term(e, coef * images[g](x, y));
  return out;
}

std::vector<std::vector<ScalarSeries>> augmented_entries(const GroupRingMatrix& m) {
  std::vector<std::vector<ScalarSeries>> out(m.rows(), std::vector<ScalarSeries>(m.cols(), ScalarSeries(m.context(), ScalarRing{0})));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = augment(m(i, j));
  return out;
}

std::vector<std::size_t> betti_from_ranks(const Grading& g, const std::vector<std::size_t>& module_ranks,
                                          const std::vector<std::size_t>& diff_ranks) {
  std::vector<std::size_t> out(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) {
    const auto up = g.above(i);
    const std::size_t incoming = up ? diff_ranks[*up] : 0;
    out[i] = module_ranks[i] - diff_ranks[i] - incoming;
  }
  return out;
}

}  // namespace

bool check_complex(const GradedComplex& c) { return composites_vanish(c); }
bool check_complex(const FieldComplex& c) { return composites_vanish(c); }

PrimeFieldMatrix tensor_matrix(const GroupRingMatrix& m, const Representation& rho) {
  check_group(m.ring(), rho);
  return tensor_with_images(m, element_images(rho), rho.prime, rho.dim);
}

FieldComplex tensor_with_rep(const GradedComplex& c, const Representation& rho) {
  check_shapes(c);
  if (!c.differentials.empty()) check_group(c.differentials.front().ring(), rho);
  const auto images = element_images(rho);
  FieldComplex out{c.grading, {}, {}};
  for (std::size_t i = 0; i < c.grading.count(); ++i) {
    out.ranks.push_back(c.ranks[i] * rho.dim);
    out.differentials.push_back(tensor_with_images(c.differentials[i], images, rho.prime, rho.dim));
  }
  return out;
}

std::vector<std::size_t> homology_dims(const FieldComplex& c) {
  check_shapes(c);
  std::vector<std::size_t> ranks;
  for (const auto& d : c.differentials) ranks.push_back(rank_mod_p(d));
  return betti_from_ranks(c.grading, c.ranks, ranks);
}

std::size_t laurent_rank(std::vector<std::vector<ScalarSeries>> rows) {
  if (rows.empty() || rows.front().empty()) return 0;
  if (rows.front().front().context()->cutoff()) throw DomainError("Laurent rank needs an exact context");
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (!rows[r][c].is_zero() && (piv == rows.size() || rows[r][c].terms().size() < rows[piv][c].terms().size()))
        piv = r;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const ScalarSeries pivot = rows[rank][c];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      const ScalarSeries factor = rows[r][c];
      for (std::size_t k = c; k < cols; ++k)
        rows[r][k] = nov_mul(pivot, rows[r][k]) - nov_mul(factor, rows[rank][k]);
    }
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> local_betti_numbers(const GradedComplex& c, const Representation& rho) {
  if (!has_monomials(c)) return homology_dims(tensor_with_rep(c, rho));
  check_shapes(c);
  check_group(c.differentials.front().ring(), rho);
  const auto images = element_images(rho);
  std::vector<std::size_t> module_ranks, diff_ranks;
  for (std::size_t i = 0; i < c.grading.count(); ++i) {
    module_ranks.push_back(c.ranks[i] * rho.dim);
    diff_ranks.push_back(laurent_rank(laurent_blocks(c.differentials[i], images, rho.prime, rho.dim)));
  }
  return betti_from_ranks(c.grading, module_ranks, diff_ranks);
}

std::vector<std::size_t> rational_betti_numbers(const GradedComplex& c) {
  check_shapes(c);
  std::vector<std::size_t> diff_ranks;
  const bool monomials = has_monomials(c);
  for (const auto& d : c.differentials) {
    if (d.ring().modulus != 0) throw DomainError("rational Betti numbers need integer coefficients");
    if (monomials) {
      diff_ranks.push_back(laurent_rank(augmented_entries(d)));
      continue;
    }
    IntegerMatrix m(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        for (const auto& [e, value] : d(i, j).terms()) m(i, j) += d.ring().augmentation(value);
    diff_ranks.push_back(rank_over_rationals(m));
  }
  return betti_from_ranks(c.grading, c.ranks, diff_ranks);
}

namespace {

struct FoldLayout {
  std::vector<std::vector<std::size_t>> members;  // Z-indices per residue, ascending
  std::vector<std::vector<std::size_t>> offsets;  // parallel to members
  std::vector<std::size_t> ranks;
};

FoldLayout fold_layout(const Grading& g, const std::vector<std::size_t>& ranks, int k) {
  if (g.cyclic) throw DomainError("fold needs a Z-graded complex");
  if (k < 2) throw DomainError("fold modulus must be at least 2, got " + std::to_string(k));
  FoldLayout l{std::vector<std::vector<std::size_t>>(k), std::vector<std::vector<std::size_t>>(k),
               std::vector<std::size_t>(k, 0)};
  for (std::size_t s = 0; s < g.count(); ++s) {
    const auto res = static_cast<std::size_t>(((g.degree(s) % k) + k) % k);
    l.members[res].push_back(s);
    l.offsets[res].push_back(l.ranks[res]);
    l.ranks[res] += ranks[s];
  }
  return l;
}

std::size_t offset_of(const FoldLayout& l, std::size_t res, std::size_t s) {
  const auto& m = l.members[res];
  return l.offsets[res][static_cast<std::size_t>(std::find(m.begin(), m.end(), s) - m.begin())];
}

}  // namespace

std::vector<std::size_t> fold_profile(const Grading& grading, const std::vector<std::size_t>& values, int k) {
  return fold_layout(grading, values, k).ranks;
}

FieldComplex fold(const FieldComplex& c, int k) {
  check_shapes(c);
  const FoldLayout l = fold_layout(c.grading, c.ranks, k);
  const std::uint32_t p = c.differentials.empty() ? 2 : c.differentials.front().prime();
  FieldComplex out{Grading::residues(k), l.ranks, {}};
  for (std::size_t res = 0; res < static_cast<std::size_t>(k); ++res) {
    const std::size_t prev = (res + k - 1) % k;
    PrimeFieldMatrix d(p, l.ranks[res], l.ranks[prev]);
    for (std::size_t idx = 0; idx < l.members[res].size(); ++idx) {
      const std::size_t s = l.members[res][idx];
      const auto b = c.grading.below(s);
      if (!b) continue;
      d.place_block(l.offsets[res][idx], offset_of(l, prev, *b), c.differentials[s]);
    }
    out.differentials.push_back(std::move(d));
  }
  return out;
}

GradedComplex fold(const GradedComplex& c, int k) {
  check_shapes(c);
  if (c.differentials.empty()) throw DomainError("empty complex");
  const FoldLayout l = fold_layout(c.grading, c.ranks, k);
  const GroupRing& ring = c.differentials.front().ring();
  const ContextPtr& ctx = c.differentials.front().context();
  GradedComplex out{Grading::residues(k), l.ranks, {}};
  for (std::size_t res = 0; res < static_cast<std::size_t>(k); ++res) {
    const std::size_t prev = (res + k - 1) % k;
    GroupRingMatrix d(ring, ctx, l.ranks[res], l.ranks[prev]);
    for (std::size_t idx = 0; idx < l.members[res].size(); ++idx) {
      const std::size_t s = l.members[res][idx];
      const auto b = c.grading.below(s);
      if (!b) continue;
      const std::size_t r0 = l.offsets[res][idx], c0 = offset_of(l, prev, *b);
      const GroupRingMatrix& block = c.differentials[s];
      for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j) d.set(r0 + i, c0 + j, block(i, j));
    }
    out.differentials.push_back(std::move(d));
  }
  return out;
}

MinimalModel minimal_model_over_field(const FieldComplex& c) {
  check_shapes(c);
  const std::size_t n = c.grading.count();
  const std::uint32_t p = c.differentials.empty() ? 2 : c.differentials.front().prime();
  MinimalModel out{FieldComplex{c.grading, {}, {}}, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t dim = c.ranks[i];
    Subspace span(p, dim);
    std::vector<FieldVector> basis;
    if (const auto up = c.grading.above(i)) {
      const PrimeFieldMatrix& d = c.differentials[*up];
      for (std::size_t r = 0; r < d.rows(); ++r) {
        FieldVector v(d.row(r).begin(), d.row(r).end());
        if (span.insert(v)) basis.push_back(std::move(v));
      }
    }
    const std::size_t boundaries = basis.size();
    std::vector<FieldVector> reps;
    for (FieldVector& z : left_kernel_basis(c.differentials[i]))
      if (span.insert(z)) reps.push_back(z), basis.push_back(std::move(z));
    for (std::size_t j = 0; j < dim && basis.size() < dim; ++j) {
      FieldVector e(dim, 0);
      e[j] = 1;
      if (span.insert(e)) basis.push_back(std::move(e));
    }
    PrimeFieldMatrix change(p, dim, dim);
    for (std::size_t r = 0; r < dim; ++r) std::copy(basis[r].begin(), basis[r].end(), change.row(r).begin());
    const PrimeFieldMatrix inv = dim == 0 ? change : *inverse(change);
    PrimeFieldMatrix include(p, reps.size(), dim);
    for (std::size_t r = 0; r < reps.size(); ++r) std::copy(reps[r].begin(), reps[r].end(), include.row(r).begin());
    out.include.push_back(std::move(include));
    out.project.push_back(inv.block(0, boundaries, dim, reps.size()));
    out.model.ranks.push_back(reps.size());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = c.grading.below(i);
    out.model.differentials.emplace_back(p, out.model.ranks[i], b ? out.model.ranks[*b] : 0);
  }
  return out;
}

bool MorseInequalities::hold() const {
  for (std::size_t k = 0; k < lhs.size(); ++k)
    if (lhs[k] < rhs[k]) return false;
  return true;
}

MorseInequalities strong_morse_inequalities(const std::vector<std::size_t>& ranks, const std::vector<std::size_t>& betti) {
  if (ranks.size() != betti.size()) throw DomainError("rank and Betti profiles differ in length");
  MorseInequalities out;
  long long l = 0, r = 0;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    l = static_cast<long long>(ranks[k]) - l;
    r = static_cast<long long>(betti[k]) - r;
    out.lhs.push_back(l);
    out.rhs.push_back(r);
  }
  return out;
}

}  // namespace orbitbound
