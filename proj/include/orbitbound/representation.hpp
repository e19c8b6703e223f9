#pragma once

#include <cstdint>
#include <vector>

#include "orbitbound/group.hpp"
#include "orbitbound/linalg.hpp"

namespace orbitbound {

/// rho: G -> GL(dim, F_p), acting on row vectors: v -> v * rho(g), so that
/// rho(g) rho(h) = rho(gh). generator_images follow group->generators().
struct Representation {
  GroupPtr group;
  std::uint32_t prime = 2;
  std::size_t dim = 0;
  std::vector<PrimeFieldMatrix> generator_images;
};

/// Checks shapes, invertibility and, for |G| <= 512, every Cayley-graph edge
/// (which is the same as checking the whole multiplication table).
Representation make_representation(GroupPtr group, std::uint32_t prime, std::vector<PrimeFieldMatrix> images);

Representation trivial_representation(GroupPtr group, std::uint32_t prime);
/// Permutation module on the group elements, e_x -> e_{xg}.
Representation regular_representation(GroupPtr group, std::uint32_t prime);

/// rho(g) for every element, indexed by Element.
std::vector<PrimeFieldMatrix> element_images(const Representation& rho);
bool is_trivial(const Representation& rho);

bool is_irreducible(const Representation& rho, std::uint64_t seed = 0);

/// Composition factors of the regular module, one representative per
/// isomorphism class, with multiplicities. sum(multiplicity * dim) = |G|.
struct RegularDecomposition {
  std::vector<Representation> irreducibles;
  std::vector<std::size_t> multiplicities;
};
RegularDecomposition decompose_regular(GroupPtr group, std::uint32_t prime, std::uint64_t seed = 0);

/// All irreducible F_p-representations up to isomorphism, sorted by dimension
/// (the trivial one first).
std::vector<Representation> irreducible_representations(GroupPtr group, std::uint32_t prime, std::uint64_t seed = 0);

/// Module isomorphism. Exact for irreducible rho1; for reducible modules the
/// Hom-space search can give up, which throws DomainError.
bool are_isomorphic(const Representation& rho1, const Representation& rho2, std::uint64_t seed = 0);

/// Conjugates every image by c: rho'(g) = c^-1 rho(g) c.
Representation change_basis(const Representation& rho, const PrimeFieldMatrix& c);

}  // namespace orbitbound
