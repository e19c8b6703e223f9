#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orbitbound/complex.hpp"
#include "orbitbound/group.hpp"
#include "orbitbound/linalg.hpp"

namespace testing {

using namespace orbitbound;

inline PrimeFieldMatrix random_matrix(std::uint32_t p, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  PrimeFieldMatrix m(p, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, static_cast<long long>(rng() % p));
  return m;
}

/// Random matrix of rank at most r: a product of a rows x r and an r x cols matrix.
inline PrimeFieldMatrix random_low_rank(std::uint32_t p, std::size_t rows, std::size_t cols, std::size_t r,
                                        std::mt19937_64& rng) {
  return random_matrix(p, rows, r, rng) * random_matrix(p, r, cols, rng);
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

/// Random Z-graded complex over F_p: ranks <= max_rank, at most max_len
/// degrees starting in [-2, 2]. Rows of each differential are drawn from the
/// left kernel of the one below so that every composite vanishes.
inline FieldComplex random_field_complex(std::uint32_t p, std::mt19937_64& rng, std::size_t max_rank = 6,
                                         std::size_t max_len = 5, bool zero_differentials = false) {
  const std::size_t len = pick(rng, 1, max_len);
  const int lo = static_cast<int>(pick(rng, 0, 4)) - 2;
  FieldComplex c;
  c.grading = Grading::integers(lo, lo + static_cast<int>(len) - 1);
  for (std::size_t i = 0; i < len; ++i) c.ranks.push_back(pick(rng, 0, max_rank));
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t rows = c.ranks[i], cols = i == 0 ? 0 : c.ranks[i - 1];
    PrimeFieldMatrix d(p, rows, cols);
    if (i > 0 && !zero_differentials && cols > 0) {
      const auto allowed = i == 1 ? std::vector<FieldVector>{} : left_kernel_basis(c.differentials[i - 1]);
      for (std::size_t r = 0; r < rows; ++r) {
        FieldVector v(cols, 0);
        if (i == 1) {
          for (auto& x : v) x = static_cast<std::uint32_t>(rng() % p);
        } else {
          for (const auto& b : allowed) {
            const std::uint32_t s = static_cast<std::uint32_t>(rng() % p);
            for (std::size_t k = 0; k < cols; ++k) v[k] = static_cast<std::uint32_t>((v[k] + s * b[k]) % p);
          }
        }
        // sometimes keep a row zero for more homology
        if (rng() % 4 == 0) std::fill(v.begin(), v.end(), 0);
        for (std::size_t k = 0; k < cols; ++k) d.set(r, k, v[k]);
      }
    }
    c.differentials.push_back(d);
  }
  return c;
}

struct NamedGroup {
  std::string name;
  GroupPtr group;
};

inline PermutationGenerators elementary_abelian_2(std::size_t k) {
  PermutationGenerators g = cyclic_group(2);
  for (std::size_t i = 1; i < k; ++i) g = direct_product(g, cyclic_group(2));
  return g;
}

/// Small groups of assorted shapes, all of order <= 24.
inline std::vector<NamedGroup> small_groups() {
  std::vector<NamedGroup> out;
  for (std::size_t n : {1, 2, 3, 4, 5, 6, 7, 8}) out.push_back({"C" + std::to_string(n), make_group(cyclic_group(n))});
  out.push_back({"V4", make_group(elementary_abelian_2(2))});
  out.push_back({"S3", make_group(symmetric_group(3))});
  out.push_back({"D4", make_group(dihedral_group(4))});
  out.push_back({"Q8", make_group(quaternion_group())});
  out.push_back({"C2^3", make_group(elementary_abelian_2(3))});
  out.push_back({"C2xC4", make_group(direct_product(cyclic_group(2), cyclic_group(4)))});
  out.push_back({"D5", make_group(dihedral_group(5))});
  out.push_back({"A4", make_group(alternating_group(4))});
  out.push_back({"D6", make_group(dihedral_group(6))});
  out.push_back({"C3xC3", make_group(direct_product(cyclic_group(3), cyclic_group(3)))});
  out.push_back({"S3xC2", make_group(direct_product(symmetric_group(3), cyclic_group(2)))});
  out.push_back({"S4", make_group(symmetric_group(4))});
  return out;
}

/// Size of the subgroup generated by gens, by closing under the table.
inline std::size_t closure_size(const FiniteGroup& g, const std::vector<Element>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> todo{g.identity()};
  in[g.identity()] = true;
  for (std::size_t i = 0; i < todo.size(); ++i)
    for (Element s : gens) {
      const Element x = g.table()[todo[i]][s];
      if (!in[x]) {
        in[x] = true;
        todo.push_back(x);
      }
    }
  return todo.size();
}

/// d(G) by trying every subset of a given size; independent of d_of_group.
inline std::size_t brute_force_rank(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n == 1) return 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<Element> gens(idx.begin(), idx.end());
      if (closure_size(g, gens) == n) return k;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return n;
}

}  // namespace testing
