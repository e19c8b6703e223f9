#include "orbitbound/representation.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

#include "orbitbound/errors.hpp"
#include "orbitbound/polynomial.hpp"

namespace orbitbound {

namespace {

constexpr int kRandomTries = 64;
constexpr int kExtendedTries = 1024;
// Projective enumeration is used only below this many points.
constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 16;

struct Module {
  std::uint32_t p;
  std::size_t n;
  std::vector<PrimeFieldMatrix> gens;
};

PrimeFieldMatrix matrix_from_vectors(std::uint32_t p, const std::vector<FieldVector>& rows, std::size_t cols) {
  PrimeFieldMatrix m(p, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  return m;
}

// Straight-line program for a random algebra element: the pool starts as the
// generators, each product appends pool[a] * pool[b], and the element is
// sum coefficients[i] * pool[i].
struct AlgebraWord {
  std::vector<std::pair<std::size_t, std::size_t>> products;
  std::vector<std::uint32_t> coefficients;
};

PrimeFieldMatrix evaluate_word(const AlgebraWord& w, const Module& m) {
  std::vector<PrimeFieldMatrix> pool = m.gens;
  for (auto [a, b] : w.products) pool.push_back(pool[a] * pool[b]);
  PrimeFieldMatrix theta(m.p, m.n, m.n);
  for (std::size_t i = 0; i < w.coefficients.size(); ++i)
    if (w.coefficients[i] != 0) theta = theta + pool[i].scaled(w.coefficients[i]);
  return theta;
}

struct Spin {
  Subspace space;
  std::vector<FieldVector> raw;                              // basis in discovery order
  std::vector<std::pair<std::size_t, std::size_t>> steps;    // raw[k+1] = raw[first] * gen[second]
};

Spin spin(const FieldVector& v, const std::vector<PrimeFieldMatrix>& gens, std::uint32_t p, std::size_t n) {
  Spin s{Subspace(p, n), {}, {}};
  if (!s.space.insert(v)) return s;
  s.raw.push_back(v);
  for (std::size_t i = 0; i < s.raw.size() && s.space.dim() < n; ++i)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      FieldVector w = vector_times(s.raw[i], gens[g]);
      if (s.space.insert(w)) {
        s.raw.push_back(std::move(w));
        s.steps.emplace_back(i, g);
      }
    }
  return s;
}

// Replays recorded spin steps from a new start vector.
std::vector<FieldVector> replay(const Spin& recorded, const FieldVector& start, const std::vector<PrimeFieldMatrix>& gens) {
  std::vector<FieldVector> out{start};
  for (auto [src, g] : recorded.steps) out.push_back(vector_times(out[src], gens[g]));
  return out;
}

// Calls visit on one representative of every 1-dimensional subspace of F_p^d
// (first nonzero coordinate equal to 1). Stops when visit returns true.
template <class Visit>
bool for_each_projective_point(std::size_t d, std::uint32_t p, Visit&& visit) {
  for (std::size_t lead = 0; lead < d; ++lead) {
    FieldVector c(d, 0);
    c[lead] = 1;
    for (;;) {
      if (visit(c)) return true;
      std::size_t i = lead + 1;
      while (i < d && c[i] == p - 1) c[i++] = 0;
      if (i >= d) break;
      ++c[i];
    }
  }
  return false;
}

std::uint64_t projective_count(std::size_t d, std::uint32_t p) {
  std::uint64_t total = 0, power = 1;
  for (std::size_t i = 0; i < d; ++i) {
    total += power;
    if (power > kEnumerationCap) return kEnumerationCap + 1;
    power *= p;
  }
  return total;
}

FieldVector combine(const std::vector<FieldVector>& basis, const FieldVector& coeffs, std::uint32_t p, std::size_t n) {
  const PrimeField f{p};
  FieldVector v(n, 0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (coeffs[k] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], f.mul(coeffs[k], basis[k][j]));
  }
  return v;
}

struct NortonWitness {
  AlgebraWord word;
  FpPoly factor;
  FieldVector vector;
  Spin spun;
};

struct SplitResult {
  bool irreducible = false;
  std::optional<Subspace> submodule;
  std::optional<NortonWitness> witness;
};

Subspace annihilator(const Subspace& dual, std::uint32_t p, std::size_t n) {
  Subspace out(p, n);
  for (const FieldVector& v : kernel_basis(dual.basis_matrix())) out.insert(v);
  return out;
}

std::vector<PrimeFieldMatrix> transposes(const std::vector<PrimeFieldMatrix>& gens) {
  std::vector<PrimeFieldMatrix> out;
  for (const auto& g : gens) out.push_back(g.transpose());
  return out;
}

// One Norton test with the given algebra element. Returns nullopt when the
// element is inconclusive.
std::optional<SplitResult> norton(const Module& m, const AlgebraWord& word, std::mt19937_64& rng) {
  const PrimeFieldMatrix theta = evaluate_word(word, m);
  for (const FpPoly& f : distinct_irreducible_factors(characteristic_polynomial(theta), rng)) {
    const PrimeFieldMatrix a = evaluate(f, theta);
    const std::vector<FieldVector> null = left_kernel_basis(a);
    if (null.empty()) continue;
    Spin s = spin(null.front(), m.gens, m.p, m.n);
    if (s.space.dim() < m.n) return SplitResult{false, std::move(s.space), std::nullopt};
    if (null.size() != static_cast<std::size_t>(f.degree())) continue;
    const std::vector<FieldVector> dual_null = kernel_basis(a);
    const Spin ds = spin(dual_null.front(), transposes(m.gens), m.p, m.n);
    if (ds.space.dim() < m.n) return SplitResult{false, annihilator(ds.space, m.p, m.n), std::nullopt};
    return SplitResult{true, std::nullopt, NortonWitness{word, f, null.front(), std::move(s)}};
  }
  return std::nullopt;
}

std::optional<SplitResult> random_search(const Module& m, std::mt19937_64& rng, int tries) {
  AlgebraWord word;
  const std::size_t k = m.gens.size();
  for (int attempt = 0; attempt < tries; ++attempt) {
    const std::size_t pool = k + word.products.size();
    word.products.emplace_back(rng() % pool, rng() % pool);
    word.coefficients.assign(pool + 1, 0);
    bool nonzero = false;
    for (auto& c : word.coefficients) {
      c = static_cast<std::uint32_t>(rng() % m.p);
      nonzero = nonzero || c != 0;
    }
    if (!nonzero) word.coefficients.back() = 1;
    if (auto r = norton(m, word, rng)) return r;
  }
  return std::nullopt;
}

SplitResult split(const Module& m, std::mt19937_64& rng) {
  if (m.n <= 1) return SplitResult{true, std::nullopt, std::nullopt};
  if (m.gens.empty()) {
    Subspace s(m.p, m.n);
    FieldVector e(m.n, 0);
    e[0] = 1;
    s.insert(e);
    return SplitResult{false, std::move(s), std::nullopt};
  }
  if (auto r = random_search(m, rng, kRandomTries)) return std::move(*r);

  // Deterministic fallback: spin every line of the module when that is cheap.
  if (projective_count(m.n, m.p) <= kEnumerationCap) {
    std::optional<Subspace> found;
    std::vector<FieldVector> unit;
    for (std::size_t i = 0; i < m.n; ++i) {
      FieldVector e(m.n, 0);
      e[i] = 1;
      unit.push_back(std::move(e));
    }
    for_each_projective_point(m.n, m.p, [&](const FieldVector& c) {
      Spin s = spin(combine(unit, c, m.p, m.n), m.gens, m.p, m.n);
      if (s.space.dim() < m.n) found = std::move(s.space);
      return found.has_value();
    });
    if (found) return SplitResult{false, std::move(found), std::nullopt};
    // Every nonzero vector generates: irreducible, but without a Norton witness.
    return SplitResult{true, std::nullopt, std::nullopt};
  }
  if (auto r = random_search(m, rng, kExtendedTries)) return std::move(*r);
  throw DomainError("irreducibility test undecided after extended search (dim " + std::to_string(m.n) + ")");
}

Module submodule_action(const Module& m, const Subspace& s) {
  Module out{m.p, s.dim(), {}};
  for (const auto& g : m.gens) {
    PrimeFieldMatrix a(m.p, s.dim(), s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const FieldVector c = s.coordinates(vector_times(s.basis()[i], g));
      std::copy(c.begin(), c.end(), a.row(i).begin());
    }
    out.gens.push_back(std::move(a));
  }
  return out;
}

Module quotient_action(const Module& m, const Subspace& s) {
  const std::vector<std::size_t> q = s.non_pivots();
  Module out{m.p, q.size(), {}};
  for (const auto& g : m.gens) {
    PrimeFieldMatrix a(m.p, q.size(), q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      const auto row = g.row(q[i]);
      const FieldVector r = s.reduce(FieldVector(row.begin(), row.end()));
      for (std::size_t j = 0; j < q.size(); ++j) a.set(i, j, r[q[j]]);
    }
    out.gens.push_back(std::move(a));
  }
  return out;
}

struct Factor {
  Module module;
  std::optional<NortonWitness> witness;
};

void chop(const Module& m, std::mt19937_64& rng, std::vector<Factor>& out) {
  SplitResult r = split(m, rng);
  if (r.irreducible) {
    out.push_back(Factor{m, std::move(r.witness)});
    return;
  }
  chop(submodule_action(m, *r.submodule), rng, out);
  chop(quotient_action(m, *r.submodule), rng, out);
}

// Basis of Hom_A(M1, M2) as n1 x n2 matrices Phi with g1 Phi = Phi g2.
std::vector<PrimeFieldMatrix> hom_space(const Module& a, const Module& b) {
  const PrimeField f{a.p};
  const std::size_t n1 = a.n, n2 = b.n, vars = n1 * n2;
  PrimeFieldMatrix eq(a.p, a.gens.size() * vars, vars);
  for (std::size_t g = 0; g < a.gens.size(); ++g)
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t l = 0; l < n2; ++l) {
        const std::size_t row = g * vars + i * n2 + l;
        for (std::size_t k = 0; k < n1; ++k) eq.add_to(row, k * n2 + l, a.gens[g](i, k));
        for (std::size_t k = 0; k < n2; ++k) eq.add_to(row, i * n2 + k, f.neg(b.gens[g](k, l)));
      }
  std::vector<PrimeFieldMatrix> out;
  for (const FieldVector& v : kernel_basis(eq)) {
    PrimeFieldMatrix phi(a.p, n1, n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t l = 0; l < n2; ++l) phi.set(i, l, v[i * n2 + l]);
    out.push_back(std::move(phi));
  }
  return out;
}

bool intertwines(const Module& a, const Module& b, const PrimeFieldMatrix& phi) {
  for (std::size_t g = 0; g < a.gens.size(); ++g)
    if (!(a.gens[g] * phi == phi * b.gens[g])) return false;
  return true;
}

// Isomorphism when a is known irreducible (optionally with a Norton witness).
bool isomorphic_to_irreducible(const Module& a, const std::optional<NortonWitness>& witness, const Module& b) {
  if (a.n != b.n) return false;
  if (a.n == 1) return a.gens == b.gens;
  if (witness) {
    const PrimeFieldMatrix a2 = evaluate(witness->factor, evaluate_word(witness->word, b));
    const std::vector<FieldVector> null2 = left_kernel_basis(a2);
    if (null2.size() != static_cast<std::size_t>(witness->factor.degree())) return false;
    if (projective_count(null2.size(), a.p) <= kEnumerationCap) {
      const auto b1_inv = inverse(matrix_from_vectors(a.p, witness->spun.raw, a.n));
      return for_each_projective_point(null2.size(), a.p, [&](const FieldVector& c) {
        const std::vector<FieldVector> images = replay(witness->spun, combine(null2, c, a.p, a.n), b.gens);
        const PrimeFieldMatrix phi = *b1_inv * matrix_from_vectors(a.p, images, a.n);
        return rank_mod_p(phi) == a.n && intertwines(a, b, phi);
      });
    }
  }
  // Schur: a nonzero map out of an irreducible module is injective.
  return !hom_space(a, b).empty();
}

Module to_module(const Representation& rho) { return Module{rho.prime, rho.dim, rho.generator_images}; }

Representation from_module(const GroupPtr& g, const Module& m) {
  return Representation{g, m.p, m.n, m.gens};
}

bool lexicographically_less(const Representation& a, const Representation& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  const bool ta = is_trivial(a), tb = is_trivial(b);
  if (ta != tb) return ta;
  for (std::size_t g = 0; g < a.generator_images.size(); ++g)
    for (std::size_t i = 0; i < a.dim; ++i) {
      const auto ra = a.generator_images[g].row(i), rb = b.generator_images[g].row(i);
      const auto cmp = std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
      if (cmp) return true;
      if (!std::equal(ra.begin(), ra.end(), rb.begin())) return false;
    }
  return false;
}

}  // namespace

Representation make_representation(GroupPtr group, std::uint32_t prime, std::vector<PrimeFieldMatrix> images) {
  if (!group) throw std::invalid_argument("representation without a group");
  if (!is_prime(prime)) throw DomainError("representation modulus " + std::to_string(prime) + " is not prime");
  if (images.size() != group->generators().size())
    throw DomainError("representation needs one image per group generator (" +
                      std::to_string(group->generators().size()) + ")");
  const std::size_t dim = images.empty() ? 1 : images.front().rows();
  if (dim == 0) throw DomainError("representation dimension must be positive");
  for (const auto& m : images) {
    if (m.prime() != prime || m.rows() != dim || m.cols() != dim)
      throw DomainError("generator images must all be " + std::to_string(dim) + "x" + std::to_string(dim));
    if (rank_mod_p(m) != dim) throw DomainError("generator image is not invertible mod " + std::to_string(prime));
  }
  Representation rho{group, prime, dim, std::move(images)};
  if (group->order() <= 512) {
    const auto all = element_images(rho);
    const auto& gens = group->generators();
    for (Element x = 0; x < group->order(); ++x)
      for (std::size_t s = 0; s < gens.size(); ++s)
        if (!(all[x] * rho.generator_images[s] == all[group->mul(x, gens[s])]))
          throw DomainError("generator images do not respect the group multiplication");
  }
  return rho;
}

Representation trivial_representation(GroupPtr group, std::uint32_t prime) {
  std::vector<PrimeFieldMatrix> images(group->generators().size(), PrimeFieldMatrix::identity(prime, 1));
  return Representation{std::move(group), prime, 1, std::move(images)};
}

Representation regular_representation(GroupPtr group, std::uint32_t prime) {
  const std::size_t n = group->order();
  std::vector<PrimeFieldMatrix> images;
  for (Element g : group->generators()) {
    PrimeFieldMatrix m(prime, n, n);
    for (Element x = 0; x < n; ++x) m.set(x, group->mul(x, g), 1);
    images.push_back(std::move(m));
  }
  return Representation{std::move(group), prime, n, std::move(images)};
}

std::vector<PrimeFieldMatrix> element_images(const Representation& rho) {
  const FiniteGroup& g = *rho.group;
  std::vector<PrimeFieldMatrix> out(g.order());
  std::vector<bool> done(g.order(), false);
  out[g.identity()] = PrimeFieldMatrix::identity(rho.prime, rho.dim);
  done[g.identity()] = true;
  // BFS order guarantees parents come first when walking words outward.
  std::vector<Element> queue{g.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      const Element y = g.mul(queue[i], g.generators()[s]);
      if (done[y] || g.tree_parent(y) != queue[i] || g.tree_generator(y) != s) continue;
      out[y] = out[queue[i]] * rho.generator_images[s];
      done[y] = true;
      queue.push_back(y);
    }
  return out;
}

bool is_trivial(const Representation& rho) {
  if (rho.dim != 1) return false;
  return std::all_of(rho.generator_images.begin(), rho.generator_images.end(),
                     [](const PrimeFieldMatrix& m) { return m(0, 0) == 1; });
}

bool is_irreducible(const Representation& rho, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return split(to_module(rho), rng).irreducible;
}

RegularDecomposition decompose_regular(GroupPtr group, std::uint32_t prime, std::uint64_t seed) {
  if (!is_prime(prime)) throw DomainError(std::to_string(prime) + " is not prime");
  std::mt19937_64 rng(seed);
  std::vector<Factor> factors;
  chop(to_module(regular_representation(group, prime)), rng, factors);

  std::vector<Factor> classes;
  std::vector<std::size_t> mult;
  for (Factor& f : factors) {
    bool matched = false;
    for (std::size_t c = 0; c < classes.size() && !matched; ++c)
      if (isomorphic_to_irreducible(classes[c].module, classes[c].witness, f.module)) {
        ++mult[c];
        matched = true;
      }
    if (!matched) {
      classes.push_back(std::move(f));
      mult.push_back(1);
    }
  }

  std::vector<std::size_t> order(classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<Representation> reps;
  for (const Factor& c : classes) reps.push_back(from_module(group, c.module));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lexicographically_less(reps[a], reps[b]); });
  RegularDecomposition out;
  for (std::size_t i : order) {
    out.irreducibles.push_back(reps[i]);
    out.multiplicities.push_back(mult[i]);
  }
  return out;
}

std::vector<Representation> irreducible_representations(GroupPtr group, std::uint32_t prime, std::uint64_t seed) {
  return decompose_regular(std::move(group), prime, seed).irreducibles;
}

bool are_isomorphic(const Representation& rho1, const Representation& rho2, std::uint64_t seed) {
  if (rho1.prime != rho2.prime) throw DomainError("representations over different primes");
  if (!rho1.group || !rho2.group || rho1.group->order() != rho2.group->order() ||
      rho1.generator_images.size() != rho2.generator_images.size())
    throw DomainError("representations of different groups");
  if (rho1.dim != rho2.dim) return false;
  const Module a = to_module(rho1), b = to_module(rho2);
  std::mt19937_64 rng(seed);
  SplitResult ra = split(a, rng);
  if (ra.irreducible) return isomorphic_to_irreducible(a, ra.witness, b);
  if (split(b, rng).irreducible) return false;

  // Both reducible: look for an invertible element of Hom(M1, M2).
  const std::vector<PrimeFieldMatrix> hom = hom_space(a, b);
  if (hom.empty()) return false;
  std::vector<FieldVector> flat;
  for (const auto& h : hom) {
    FieldVector v;
    for (std::size_t i = 0; i < a.n; ++i) v.insert(v.end(), h.row(i).begin(), h.row(i).end());
    flat.push_back(std::move(v));
  }
  auto invertible = [&](const FieldVector& c) {
    const FieldVector v = combine(flat, c, a.p, a.n * a.n);
    PrimeFieldMatrix phi(a.p, a.n, a.n);
    for (std::size_t i = 0; i < a.n; ++i)
      for (std::size_t j = 0; j < a.n; ++j) phi.set(i, j, v[i * a.n + j]);
    return rank_mod_p(phi) == a.n;
  };
  if (projective_count(hom.size(), a.p) <= kEnumerationCap) return for_each_projective_point(hom.size(), a.p, invertible);
  for (int t = 0; t < kExtendedTries; ++t) {
    FieldVector c(hom.size());
    for (auto& x : c) x = static_cast<std::uint32_t>(rng() % a.p);
    if (invertible(c)) return true;
  }
  throw DomainError("module isomorphism undecided: Hom space too large to enumerate");
}

Representation change_basis(const Representation& rho, const PrimeFieldMatrix& c) {
  const auto c_inv = inverse(c);
  if (!c_inv) throw DomainError("change of basis matrix is singular");
  Representation out = rho;
  for (auto& m : out.generator_images) m = *c_inv * m * c;
  return out;
}

}  // namespace orbitbound
