#include <doctest.h>

#include <set>

#include "orbitbound/errors.hpp"
#include "orbitbound/group.hpp"
#include "catalogue.hpp"
#include "support.hpp"

using namespace orbitbound;

namespace {

/// Cheap isomorphism invariants: element order profile, centre, derived subgroup.
std::vector<std::size_t> fingerprint(const FiniteGroup& g) {
  std::vector<std::size_t> out(g.order() + 1, 0);
  for (Element a = 0; a < g.order(); ++a) ++out[g.element_order(a)];
  std::size_t centre = 0;
  for (Element a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    centre += central;
  }
  std::vector<Element> all(g.order());
  for (Element a = 0; a < g.order(); ++a) all[a] = a;
  out.push_back(centre);
  out.push_back(g.derived_subgroup(all).size());
  return out;
}

/// Tries every image tuple for the generators of a, extending along a search.
bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  const auto& gens = a.generators();
  const std::size_t n = a.order(), none = n;
  std::vector<Element> images(gens.size(), 0);
  for (;;) {
    bool orders_match = true;
    for (std::size_t k = 0; k < gens.size() && orders_match; ++k)
      orders_match = a.element_order(gens[k]) == b.element_order(images[k]);
    if (orders_match) {
      std::vector<Element> phi(n, none);
      phi[a.identity()] = b.identity();
      std::vector<Element> todo{a.identity()};
      for (std::size_t i = 0; i < todo.size(); ++i)
        for (std::size_t k = 0; k < gens.size(); ++k) {
          const Element y = a.mul(todo[i], gens[k]);
          if (phi[y] != none) continue;
          phi[y] = b.mul(phi[todo[i]], images[k]);
          todo.push_back(y);
        }
      bool ok = std::set<Element>(phi.begin(), phi.end()).size() == n;
      for (Element x = 0; x < n && ok; ++x)
        for (Element y = 0; y < n && ok; ++y) ok = phi[a.mul(x, y)] == b.mul(phi[x], phi[y]);
      if (ok) return true;
    }
    std::size_t i = 0;
    while (i < images.size() && ++images[i] == n) images[i++] = 0;
    if (i == images.size()) return false;
  }
}

}  // namespace

TEST_CASE("builder orders") {
  CHECK(make_group(cyclic_group(1))->order() == 1);
  CHECK(make_group(cyclic_group(12))->order() == 12);
  CHECK(make_group(dihedral_group(5))->order() == 10);
  CHECK(make_group(quaternion_group())->order() == 8);
  CHECK(make_group(symmetric_group(4))->order() == 24);
  CHECK(make_group(alternating_group(4))->order() == 12);
  CHECK(make_group(alternating_group(5))->order() == 60);
  CHECK(make_group(alternating_group(6))->order() == 360);
  CHECK(make_group(direct_product(cyclic_group(2), cyclic_group(3)))->order() == 6);
}

TEST_CASE("group axioms hold for every small group") {
  for (const auto& [name, g] : testing::small_groups()) {
    CAPTURE(name);
    const Element e = g->identity();
    for (Element a = 0; a < g->order(); ++a) {
      CHECK(g->mul(a, e) == a);
      CHECK(g->mul(g->inv(a), a) == e);
      CHECK(g->evaluate(g->spanning_word(a), g->generators()) == a);
      CHECK(g->find(g->label(a)) == a);
      CHECK(g->order() % g->element_order(a) == 0);
    }
    for (Element a = 0; a < g->order(); ++a)
      for (Element b = 0; b < g->order(); ++b)
        for (Element c = 0; c < g->order(); c += 3) CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
    CHECK(testing::closure_size(*g, g->generators()) == g->order());
  }
}

TEST_CASE("d(G) matches subset brute force") {
  for (const auto& [name, g] : testing::small_groups()) {
    CAPTURE(name);
    CHECK(d_of_group(*g) == testing::brute_force_rank(*g));
  }
  CHECK(d_of_group(*make_group(alternating_group(5))) == 2);
}

TEST_CASE("structural predicates") {
  const auto s3 = make_group(symmetric_group(3));
  const auto a4 = make_group(alternating_group(4));
  const auto a5 = make_group(alternating_group(5));
  const auto s4 = make_group(symmetric_group(4));
  const auto c5 = make_group(cyclic_group(5));
  const auto v4 = make_group(testing::elementary_abelian_2(2));

  CHECK(is_cyclic(*c5));
  CHECK_FALSE(is_cyclic(*v4));
  CHECK(is_abelian(*v4));
  CHECK_FALSE(is_abelian(*s3));

  CHECK(is_solvable(*s3));
  CHECK(is_solvable(*s4));
  CHECK(is_solvable(*a4));
  CHECK_FALSE(is_solvable(*a5));

  CHECK(is_simple(*a5));
  CHECK(is_simple(*c5));
  CHECK_FALSE(is_simple(*a4));
  CHECK_FALSE(is_simple(*make_group(cyclic_group(1))));

  CHECK(is_perfect(*a5));
  CHECK_FALSE(is_perfect(*s4));

  std::vector<Element> all(s4->order());
  for (Element i = 0; i < all.size(); ++i) all[i] = i;
  CHECK(s4->derived_subgroup(all).size() == 12);
  CHECK(a4->conjugacy_class_representatives().size() == 4);
  CHECK(a5->conjugacy_class_representatives().size() == 5);
  CHECK(s4->conjugacy_class_representatives().size() == 5);
}

TEST_CASE("abelianization of finite groups") {
  CHECK(abelianization(*make_group(testing::elementary_abelian_2(2))) == std::vector<BigInt>{2, 2});
  CHECK(abelianization(*make_group(symmetric_group(3))) == std::vector<BigInt>{2});
  CHECK(abelianization(*make_group(alternating_group(5))).empty());
  CHECK(abelianization(*make_group(direct_product(cyclic_group(2), cyclic_group(3)))) == std::vector<BigInt>{6});
}

TEST_CASE("multiplication-table input is validated") {
  // Z/3
  auto g = FiniteGroup::from_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {"e", "x", "y"});
  CHECK(g.order() == 3);
  CHECK(g.find("x").has_value());
  CHECK(is_cyclic(g));
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), DomainError);     // not a Latin square
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2}, {1, 0}}), DomainError);  // ragged
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 0}}, {"e", "e"}), DomainError);
  // Latin square that is not associative
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                           {1, 0, 3, 4, 2},
                                           {2, 4, 0, 1, 3},
                                           {3, 2, 4, 0, 1},
                                           {4, 3, 1, 2, 0}}),
                  DomainError);
}

TEST_CASE("permutation closure respects the order cap") {
  GroupLimits tight;
  tight.max_order = 10;
  CHECK_THROWS_AS(make_group(symmetric_group(4), tight), DomainError);
  CHECK_NOTHROW(make_group(symmetric_group(3), tight));
}

TEST_CASE("homomorphisms from presentations") {
  const auto s3 = make_group(symmetric_group(3));
  const Presentation pres = make_presentation({"a", "b"}, {"a^2", "b^3", "(ab)^2"});
  const auto hom = make_homomorphism(pres, s3, s3->generators());
  CHECK(is_surjective(hom));
  const auto c2 = make_group(cyclic_group(2));
  const auto onto_c2 = make_homomorphism(pres, c2, {c2->generators()[0], c2->identity()});
  CHECK(is_surjective(onto_c2));
  const auto trivial_map = make_homomorphism(pres, c2, {c2->identity(), c2->identity()});
  CHECK_FALSE(is_surjective(trivial_map));
  CHECK_THROWS_AS(make_homomorphism(pres, c2, {c2->identity(), c2->generators()[0]}), DomainError);
  CHECK_THROWS_AS(make_homomorphism(pres, c2, {c2->identity()}), DomainError);
}

TEST_CASE("Cayley presentations present the group") {
  for (const auto& [name, g] : testing::small_groups()) {
    CAPTURE(name);
    const GroupHomomorphism h = cayley_presentation(g);
    CHECK(h.source.generator_count() == g->generators().size());
    CHECK(is_surjective(h));
    // one relator per non-tree edge
    CHECK(h.source.relators.size() == g->order() * g->generators().size() - (g->order() - 1));
    for (const Word& r : h.source.relators) CHECK(g->evaluate(r, h.images) == g->identity());
  }
}

TEST_CASE("catalogue of all groups of order at most 24") {
  // number of isomorphism classes of each order 1..24
  const std::vector<std::size_t> expected = {1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15};
  const auto groups = testing::groups_of_order_at_most_24();
  std::vector<std::size_t> counts(24, 0);
  for (const auto& [name, g] : groups) {
    REQUIRE(g->order() <= 24);
    ++counts[g->order() - 1];
  }
  CHECK(counts == expected);
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const auto& a = *groups[i].group;
      const auto& b = *groups[j].group;
      if (a.order() != b.order() || fingerprint(a) != fingerprint(b)) continue;
      CAPTURE(groups[i].name);
      CAPTURE(groups[j].name);
      CHECK_FALSE(isomorphic(a, b));
    }
  // the isomorphism search does find isomorphisms
  CHECK(isomorphic(*make_group(dihedral_group(3)), *make_group(symmetric_group(3))));
  CHECK(isomorphic(*testing::metacyclic(4, 2, 3, 2), *make_group(quaternion_group())));
}
