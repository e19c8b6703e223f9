#include <doctest.h>

#include "orbitbound/errors.hpp"
#include "orbitbound/local_coefficients.hpp"
#include "orbitbound/presentation.hpp"
#include "orbitbound/representation.hpp"
#include "support.hpp"

using namespace orbitbound;

namespace {

const std::vector<std::string> kAB = {"a", "b"};

std::size_t parse_error_position(const std::string& text, const std::vector<std::string>& names) {
  try {
    parse_word(text, names);
  } catch (const ParseError& e) {
    return e.position();
  }
  return ParseError::kNoPosition;
}

}  // namespace

TEST_CASE("word grammar") {
  const Presentation p{kAB, {}};
  CHECK(p.format(parse_word("ab^-1", kAB)) == "ab^-1");
  CHECK(parse_word("(ab)^2", kAB).length() == 4);
  CHECK(parse_word("a a^-1 b", kAB) == Word::generator(1));
  CHECK(parse_word("1", kAB).empty());
  CHECK(parse_word("a*b*a^-1*b^-1", kAB).length() == 4);
  CHECK(parse_word("(ab)^-1", kAB) == parse_word("b^-1a^-1", kAB));
  CHECK(parse_word("a^0", kAB).empty());
  // longest generator name wins
  const std::vector<std::string> names = {"x", "x1"};
  CHECK(parse_word("x1x", names).letters().front().generator == 1);
}

TEST_CASE("word syntax errors carry positions") {
  CHECK(parse_error_position("ac", kAB) == 1);
  CHECK(parse_error_position("(ab", kAB) != ParseError::kNoPosition);
  CHECK(parse_error_position("a^", kAB) != ParseError::kNoPosition);
  CHECK_THROWS_AS(make_presentation({"a", "a"}, {}), ParseError);
}

TEST_CASE("word algebra") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Letter> letters;
    for (std::size_t i = testing::pick(rng, 0, 8); i > 0; --i)
      letters.push_back(Letter{rng() % 2, rng() % 2 ? 1 : -1});
    const Word w(letters);
    CHECK((w * w.inverse()).empty());
    CHECK(w.power(3).exponent_sum(0) == 3 * w.exponent_sum(0));
    CHECK(w.power(-1) == w.inverse());
    for (std::size_t i = 1; i < w.length(); ++i)
      CHECK_FALSE((w.letters()[i].generator == w.letters()[i - 1].generator &&
                   w.letters()[i].exponent == -w.letters()[i - 1].exponent));
  }
}

TEST_CASE("abelianization of presentations") {
  CHECK(abelianization(make_presentation(kAB, {"aba^-1b^-1"})) == std::vector<BigInt>{0, 0});
  CHECK(abelianization(make_presentation(kAB, {"a^2", "b^3", "(ab)^2"})) == std::vector<BigInt>{2});
  CHECK(abelianization(make_presentation(kAB, {"a^2", "b^3", "(ab)^5"})).empty());
  CHECK(abelianization(make_presentation({"a"}, {"a^12"})) == std::vector<BigInt>{12});
  CHECK(abelianization(make_presentation({"a"}, {})) == std::vector<BigInt>{0});
  CHECK(abelian_rank_mod_p({2, 6, 0}, 2) == 3);
  CHECK(abelian_rank_mod_p({2, 6, 0}, 3) == 2);
  CHECK(abelian_rank_mod_p({2, 6, 0}, 5) == 1);
  const IntegerMatrix m = exponent_matrix(make_presentation(kAB, {"a^2b", "ab^-3a"}));
  CHECK(m == IntegerMatrix::from_rows({{2, 1}, {2, -3}}));
}

TEST_CASE("coset enumeration") {
  auto order = [](const std::vector<std::string>& gens, const std::vector<std::string>& rels) {
    return coset_enumeration(make_presentation(gens, rels), 100000).order;
  };
  CHECK(order(kAB, {"a^2", "b^3", "(ab)^2"}) == 6u);
  CHECK(order(kAB, {"a^2", "b^3", "(ab)^3"}) == 12u);
  CHECK(order(kAB, {"a^2", "b^3", "(ab)^4"}) == 24u);
  CHECK(order(kAB, {"a^2", "b^3", "(ab)^5"}) == 60u);
  CHECK(order(kAB, {"a^4", "b^4", "abab^-1", "a^2b^-2"}) == 8u);  // Q8
  CHECK(order({"a"}, {"a^7"}) == 7u);
  CHECK(order(kAB, {"a", "b"}) == 1u);
  // Z: the table never closes
  const auto free = coset_enumeration(make_presentation({"a"}, {}), 500);
  CHECK_FALSE(free.order.has_value());
  CHECK(free.cosets_defined >= 500);
}

TEST_CASE("Fox derivatives of small relators") {
  // trivial coefficients: the Fox derivative is the exponent sum
  const auto f2 = PrimeFieldMatrix::identity(5, 1);
  const std::vector<PrimeFieldMatrix> trivial = {f2, f2};
  const Word r = parse_word("a^2ba^-1", kAB);
  CHECK(fox_derivative(r, 0, trivial)(0, 0) == 1);
  CHECK(fox_derivative(r, 1, trivial)(0, 0) == 1);
  // a -> 2, b -> 3 over F_5: d(a^2 b a^-1)/da = 1 + a - a^2 b a^-1 = 1 + 2 - 4*3*3 = -33 = 2
  const std::vector<PrimeFieldMatrix> scalars = {PrimeFieldMatrix::from_rows(5, {{2}}),
                                                 PrimeFieldMatrix::from_rows(5, {{3}})};
  CHECK(fox_derivative(r, 0, scalars)(0, 0) == 2);
  // d/db = a^2 = 4
  CHECK(fox_derivative(r, 1, scalars)(0, 0) == 4);
}

TEST_CASE("presentation complex composes to zero") {
  const auto s3 = make_group(symmetric_group(3));
  const Presentation pres = make_presentation(kAB, {"a^2", "b^3", "(ab)^2"});
  const auto hom = make_homomorphism(pres, s3, s3->generators());
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (const Representation& rho : irreducible_representations(s3, p)) {
      const auto c = presentation_complex(pres, letter_images(rho, hom));
      CHECK((c.d2 * c.d1).is_zero());
    }
  }
}

TEST_CASE("b1 with trivial coefficients is the mod-p abelian rank") {
  const std::vector<std::vector<std::string>> relator_sets = {
      {"a^2", "b^3", "(ab)^2"}, {"aba^-1b^-1"}, {"a^4", "b^2", "(ab)^2"}, {"a^6", "b^2", "abab^-1"}, {"a^2", "b^2"}};
  const auto trivial_group = make_group(cyclic_group(1));
  for (const auto& rels : relator_sets) {
    const Presentation pres = make_presentation(kAB, rels);
    const auto hom = make_homomorphism(pres, trivial_group, {0, 0});
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      const auto rho = trivial_representation(trivial_group, p);
      CHECK(local_betti(pres, hom, rho, 0) == 1);
      CHECK(local_betti(pres, hom, rho, 1) == abelian_rank_mod_p(abelianization(pres), p));
    }
  }
}

TEST_CASE("local Betti numbers do not depend on the presentation") {
  // S3 given two ways; b0 and b1 are invariants of the group and the module.
  const auto s3 = make_group(symmetric_group(3));
  const Presentation small = make_presentation(kAB, {"a^2", "b^3", "(ab)^2"});
  const auto hom_small = make_homomorphism(small, s3, s3->generators());
  const auto hom_cayley = cayley_presentation(s3);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (const Representation& rho : irreducible_representations(s3, p)) {
      CAPTURE(p);
      CAPTURE(rho.dim);
      for (int deg : {0, 1})
        CHECK(local_betti(small, hom_small, rho, deg) == local_betti(hom_cayley.source, hom_cayley, rho, deg));
    }
  }
}

TEST_CASE("sign representation of S3 over F_3") {
  // H_0 = F_3 / (sign - 1) = 0; H_1(S3; F_3^sign) = F_3
  const auto s3 = make_group(symmetric_group(3));
  const Presentation pres = make_presentation(kAB, {"a^2", "b^3", "(ab)^2"});
  const auto hom = make_homomorphism(pres, s3, s3->generators());
  std::vector<PrimeFieldMatrix> images;
  for (Element g : s3->generators()) {
    // sign of the permutation: transposition a, 3-cycle b
    images.push_back(PrimeFieldMatrix::from_rows(3, {{s3->element_order(g) == 2 ? -1 : 1}}));
  }
  const auto sign = make_representation(s3, 3, images);
  CHECK(local_betti(pres, hom, sign, 0) == 0);
  CHECK(local_betti(pres, hom, sign, 1) == 1);
}

TEST_CASE("presentation with no generators") {
  const Presentation empty = make_presentation({}, {});
  const auto g1 = make_group(cyclic_group(1));
  const auto hom = make_homomorphism(empty, g1, {});
  const auto rho = trivial_representation(g1, 3);
  CHECK(local_betti(empty, hom, rho, 0) == 1);
  CHECK(local_betti(empty, hom, rho, 1) == 0);
}
