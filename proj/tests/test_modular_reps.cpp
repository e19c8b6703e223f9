#include <doctest.h>

#include "orbitbound/errors.hpp"
#include "orbitbound/representation.hpp"
#include "support.hpp"

using namespace orbitbound;

namespace {

std::vector<std::size_t> dims(const GroupPtr& g, std::uint32_t p) {
  std::vector<std::size_t> out;
  for (const auto& rho : irreducible_representations(g, p)) out.push_back(rho.dim);
  return out;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  std::vector<PrimeFieldMatrix> images;
  for (std::size_t i = 0; i < a.generator_images.size(); ++i) {
    PrimeFieldMatrix m(a.prime, a.dim + b.dim, a.dim + b.dim);
    m.place_block(0, 0, a.generator_images[i]);
    m.place_block(a.dim, a.dim, b.generator_images[i]);
    images.push_back(m);
  }
  return make_representation(a.group, a.prime, images);
}

PrimeFieldMatrix random_invertible(std::uint32_t p, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    auto m = testing::random_matrix(p, n, n, rng);
    if (inverse(m)) return m;
  }
}

}  // namespace

TEST_CASE("irreducible dimensions of small groups") {
  using V = std::vector<std::size_t>;
  const auto s3 = make_group(symmetric_group(3));
  CHECK(dims(s3, 2) == V{1, 2});
  CHECK(dims(s3, 3) == V{1, 1});
  CHECK(dims(s3, 5) == V{1, 1, 2});
  const auto v4 = make_group(testing::elementary_abelian_2(2));
  CHECK(dims(v4, 2) == V{1});
  CHECK(dims(v4, 3) == V{1, 1, 1, 1});
  // x^2 + x + 1 and x^4 + ... + 1 stay irreducible over F_2
  CHECK(dims(make_group(cyclic_group(3)), 2) == V{1, 2});
  CHECK(dims(make_group(cyclic_group(5)), 2) == V{1, 4});
  const auto a4 = make_group(alternating_group(4));
  CHECK(dims(a4, 2) == V{1, 2});
  CHECK(dims(a4, 3) == V{1, 3});
  CHECK(dims(make_group(quaternion_group()), 3) == V{1, 1, 1, 1, 2});
  CHECK(dims(make_group(symmetric_group(4)), 2) == V{1, 2});
  CHECK(dims(make_group(symmetric_group(4)), 3) == V{1, 1, 3, 3});
  const auto a5 = make_group(alternating_group(5));
  // the Galois-conjugate pairs over F_4 and F_9 merge over the prime field
  CHECK(dims(a5, 2) == V{1, 4, 4});
  CHECK(dims(a5, 3) == V{1, 4, 6});
  CHECK(dims(a5, 5) == V{1, 3, 5});
}

TEST_CASE("the trivial representation comes first") {
  for (const auto& [name, g] : testing::small_groups()) {
    if (g->order() == 1) continue;
    CAPTURE(name);
    for (std::uint32_t p : prime_divisors(g->order())) CHECK(is_trivial(irreducible_representations(g, p).front()));
  }
}

TEST_CASE("regular decomposition accounts for the whole regular module") {
  for (const auto& [name, g] : testing::small_groups()) {
    if (g->order() == 1 || g->order() > 12) continue;
    CAPTURE(name);
    for (std::uint32_t p : {2u, 3u, 5u}) {
      const auto dec = decompose_regular(g, p);
      std::size_t total = 0;
      for (std::size_t i = 0; i < dec.irreducibles.size(); ++i) total += dec.multiplicities[i] * dec.irreducibles[i].dim;
      CHECK(total == g->order());
    }
  }
}

TEST_CASE("reducible modules are detected") {
  const auto s3 = make_group(symmetric_group(3));
  CHECK_FALSE(is_irreducible(regular_representation(s3, 5)));
  CHECK_FALSE(is_irreducible(regular_representation(s3, 3)));
  const auto irr = irreducible_representations(s3, 5);
  CHECK_FALSE(is_irreducible(direct_sum(irr[0], irr[2])));
  CHECK_FALSE(is_irreducible(direct_sum(irr[1], irr[1])));
  // a non-split extension: the regular module of C3 over F_3 is uniserial
  CHECK_FALSE(is_irreducible(regular_representation(make_group(cyclic_group(3)), 3)));
  CHECK(is_irreducible(trivial_representation(s3, 2)));
}

TEST_CASE("isomorphism is invariant under change of basis") {
  std::mt19937_64 rng(21);
  for (const auto& [name, g] : testing::small_groups()) {
    if (g->order() == 1 || g->order() > 12) continue;
    CAPTURE(name);
    for (std::uint32_t p : prime_divisors(g->order())) {
      const auto irr = irreducible_representations(g, p);
      for (std::size_t i = 0; i < irr.size(); ++i) {
        const auto conj = change_basis(irr[i], random_invertible(p, irr[i].dim, rng));
        CHECK(is_irreducible(conj, 3));
        CHECK(are_isomorphic(irr[i], conj));
        for (std::size_t j = 0; j < irr.size(); ++j)
          if (j != i) CHECK_FALSE(are_isomorphic(irr[j], conj));
      }
    }
  }
}

TEST_CASE("irreducibility does not depend on the seed") {
  const auto a4 = make_group(alternating_group(4));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (const auto& rho : irreducible_representations(a4, 3, seed)) CHECK(is_irreducible(rho, seed + 100));
    CHECK(dims(a4, 2) == std::vector<std::size_t>{1, 2});
  }
}

TEST_CASE("representation input is validated") {
  const auto s3 = make_group(symmetric_group(3));
  const auto one = PrimeFieldMatrix::identity(3, 1);
  const auto two = PrimeFieldMatrix::from_rows(3, {{2}});
  CHECK_NOTHROW(make_representation(s3, 3, {two, one}));
  // b has order 3 and cannot map to -1
  CHECK_THROWS_AS(make_representation(s3, 3, {one, two}), DomainError);
  CHECK_THROWS_AS(make_representation(s3, 3, {one}), DomainError);
  CHECK_THROWS_AS(make_representation(s3, 4, {one, one}), DomainError);
  CHECK_THROWS_AS(make_representation(s3, 3, {PrimeFieldMatrix(3, 1, 1), one}), DomainError);
  const auto other = make_group(cyclic_group(2));
  CHECK_THROWS_AS(are_isomorphic(trivial_representation(s3, 3), trivial_representation(other, 3)), DomainError);
  CHECK_THROWS_AS(are_isomorphic(trivial_representation(s3, 3), trivial_representation(s3, 2)), DomainError);
}

TEST_CASE("regular representation is a homomorphism") {
  const auto d4 = make_group(dihedral_group(4));
  const auto reg = regular_representation(d4, 2);
  const auto imgs = element_images(reg);
  for (Element a = 0; a < d4->order(); ++a)
    for (Element b = 0; b < d4->order(); ++b) CHECK(imgs[a] * imgs[b] == imgs[d4->mul(a, b)]);
}
