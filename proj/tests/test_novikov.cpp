#include <doctest.h>

#include "orbitbound/errors.hpp"
#include "orbitbound/novikov.hpp"
#include "support.hpp"

using namespace orbitbound;

namespace {

const ScalarRing kF5{5};
const ScalarRing kZ{0};

ScalarSeries series(const ContextPtr& ctx, const ScalarRing& ring, std::vector<std::pair<Exponent, long long>> terms) {
  ScalarSeries s(ctx, ring);
  for (auto& [e, c] : terms) s.add_term(e, c);
  return s;
}

/// Terms of s whose primary level is strictly above `above`, in an exact context.
template <class Ring>
NovikovSeries<Ring> above(const NovikovSeries<Ring>& s, const Rational& level) {
  const auto exact = make_context(s.context()->weights(), std::nullopt);
  NovikovSeries<Ring> out(exact, s.ring());
  for (const auto& [e, c] : s.terms())
    if (exact->primary_level(e) > level) out.add_term(e, c);
  return out;
}

Rational lead_level(const ScalarSeries& s) { return s.context()->primary_level(*s.leading_exponent()); }

ContextPtr random_context(std::size_t m, const Rational& cutoff) {
  if (m == 1) return make_context_1d(cutoff);
  return make_context({{Rational(1), Rational(0)}, {Rational(1, 3), Rational(1)}}, cutoff);
}

ScalarSeries random_series(const ContextPtr& ctx, std::mt19937_64& rng) {
  ScalarSeries s(ctx, kF5);
  for (std::size_t k = testing::pick(rng, 1, 4); k > 0; --k) {
    Exponent e(ctx->rank());
    for (auto& x : e) x = static_cast<long long>(rng() % 7) - 3;
    s.add_term(e, static_cast<long long>(rng() % 5));
  }
  return s;
}

}  // namespace

TEST_CASE("weights must be injective") {
  CHECK_THROWS_AS(make_context({{Rational(1)}, {Rational(2)}}, std::nullopt), DomainError);
  CHECK_THROWS_AS(make_context({{Rational(1), Rational(0)}, {Rational(1)}}, std::nullopt), DomainError);
  CHECK_NOTHROW(make_context({{Rational(1), Rational(0)}, {Rational(1), Rational(1)}}, std::nullopt));
}

TEST_CASE("levels are compared lexicographically") {
  const auto ctx = make_context({{Rational(1), Rational(0)}, {Rational(1), Rational(1)}}, std::nullopt);
  CHECK(ctx->lower({1, 0}, {0, 1}));   // (1,0) < (1,1)
  CHECK(ctx->lower({0, -1}, {-1, 0}));  // (-1,-1) < (-1,0)
  CHECK_FALSE(ctx->lower({1, 0}, {1, 0}));
  CHECK(ctx->variable_name(1) == "t2");
  CHECK(make_context_1d(std::nullopt)->variable_name(0) == "t");
}

TEST_CASE("truncation keeps terms strictly above the cutoff") {
  const auto ctx = make_context_1d(Rational(-2));
  const auto s = series(ctx, kZ, {{{0}, 1}, {{-1}, 2}, {{-2}, 3}, {{-3}, 4}});
  CHECK(s.terms().size() == 2);
  CHECK(s.to_string() == "1 + 2*t^-1");
}

TEST_CASE("formatting") {
  const auto ctx = make_context_1d(std::nullopt);
  CHECK(series(ctx, kZ, {{{2}, -3}, {{0}, 1}, {{-1}, -1}}).to_string() == "-3*t^2 + 1 - t^-1");
  CHECK(ScalarSeries(ctx, kZ).to_string() == "0");
}

TEST_CASE("inverse of 1 + t^-1 over F_5") {
  const auto ctx = make_context_1d(Rational(-6));
  const auto inv = nov_invert(series(ctx, kF5, {{{0}, 1}, {{-1}, 1}}));
  CHECK(inv.to_string() == "1 + 4*t^-1 + t^-2 + 4*t^-3 + t^-4 + 4*t^-5");
}

TEST_CASE("inverse of 1 - t^-1 over Z is the geometric series") {
  const auto ctx = make_context_1d(Rational(-4));
  const auto inv = nov_invert(series(ctx, kZ, {{{0}, 1}, {{-1}, -1}}));
  CHECK(inv == series(ctx, kZ, {{{0}, 1}, {{-1}, 1}, {{-2}, 1}, {{-3}, 1}}));
}

TEST_CASE("inverse with a leading term away from degree zero") {
  // (2t^3 + t)^-1 = 3t^-3 (1 + 3t^-2)^-1 = 3t^-3 + 6t^-5 + 12t^-7 + ... over F_5
  const auto ctx = make_context_1d(Rational(-8));
  const auto inv = nov_invert(series(ctx, kF5, {{{3}, 2}, {{1}, 1}}));
  CHECK(inv.to_string() == "3*t^-3 + t^-5 + 2*t^-7");
}

TEST_CASE("monomials invert exactly without a cutoff") {
  const auto ctx = make_context_1d(std::nullopt);
  CHECK(nov_invert(series(ctx, kF5, {{{2}, 3}})) == series(ctx, kF5, {{{-2}, 2}}));
  CHECK(nov_invert(series(ctx, kZ, {{{1}, -1}})) == series(ctx, kZ, {{{-1}, -1}}));
}

TEST_CASE("inversion failures") {
  const auto exact = make_context_1d(std::nullopt);
  CHECK_THROWS_AS(nov_invert(ScalarSeries(exact, kF5)), DomainError);
  CHECK_THROWS_AS(nov_invert(series(exact, kZ, {{{0}, 2}})), DomainError);
  CHECK_THROWS_AS(nov_invert(series(exact, kZ, {{{0}, 1}, {{-1}, 1}})), DomainError);
  // t1 t2^-1 shares the primary level of the constant term
  const auto tie = make_context({{Rational(1), Rational(0)}, {Rational(1), Rational(1)}}, Rational(-5));
  CHECK_THROWS_AS(nov_invert(series(tie, kF5, {{{0, 0}, 1}, {{1, -1}, 1}})), DomainError);
}

TEST_CASE("mixing contexts or rings is rejected") {
  const auto a = series(make_context_1d(Rational(-3)), kF5, {{{0}, 1}});
  const auto b = series(make_context_1d(Rational(-4)), kF5, {{{0}, 1}});
  CHECK_THROWS_AS(a + b, DomainError);
  const auto c = series(make_context_1d(Rational(-3)), kZ, {{{0}, 1}});
  CHECK_THROWS_AS(nov_mul(a, c), DomainError);
}

TEST_CASE("group ring series multiply in the group order") {
  const auto s3 = make_group(symmetric_group(3));
  const GroupRing ring{s3, 0};
  const auto ctx = make_context_1d(std::nullopt);
  const Element a = s3->generators()[0], b = s3->generators()[1];
  const auto x = GroupRingSeries::monomial(ctx, ring, {1}, ring.element(a));
  const auto y = GroupRingSeries::monomial(ctx, ring, {2}, ring.element(b));
  const auto xy = nov_mul(x, y), yx = nov_mul(y, x);
  CHECK(xy.terms().at({3}) == ring.element(s3->mul(a, b)));
  CHECK(yx.terms().at({3}) == ring.element(s3->mul(b, a)));
  CHECK_FALSE(xy == yx);
  CHECK(augment(xy + yx) == series(ctx, kZ, {{{3}, 2}}));
}

TEST_CASE("group components round trip") {
  std::mt19937_64 rng(31);
  const auto d4 = make_group(dihedral_group(4));
  const GroupRing ring{d4, 5};
  const auto ctx = make_context_1d(Rational(-4));
  for (int trial = 0; trial < 30; ++trial) {
    GroupRingSeries s(ctx, ring);
    for (int k = 0; k < 5; ++k)
      s.add_term({static_cast<long long>(rng() % 7) - 3}, ring.element(rng() % d4->order(), rng() % 5));
    const auto comps = to_group_components(s);
    CHECK(comps.size() == d4->order());
    CHECK(from_group_components(comps, ring) == s);
  }
}

TEST_CASE("augmentation is multiplicative") {
  std::mt19937_64 rng(32);
  for (const auto& g : {make_group(symmetric_group(3)), make_group(quaternion_group())}) {
    const GroupRing ring{g, 5};
    for (std::size_t m : {1u, 2u}) {
      const auto ctx = random_context(m, Rational(-3));
      for (int trial = 0; trial < 50; ++trial) {
        auto make = [&] {
          GroupRingSeries s(ctx, ring);
          for (int k = 0; k < 4; ++k) {
            Exponent e(m);
            for (auto& x : e) x = static_cast<long long>(rng() % 5) - 2;
            s.add_term(e, ring.element(rng() % g->order(), rng() % 5));
          }
          return s;
        };
        const auto a = make(), b = make();
        // the product is computed exactly so no truncation interferes
        const auto exact = make_context(ctx->weights(), std::nullopt);
        const auto ae = a.with_context(exact), be = b.with_context(exact);
        CHECK(augment(nov_mul(ae, be)) == nov_mul(augment(ae), augment(be)));
        CHECK(augment(a + b) == augment(a) + augment(b));
      }
    }
  }
}

TEST_CASE("a times its inverse is 1 above the truncation window") {
  std::mt19937_64 rng(33);
  int checked = 0;
  for (int trial = 0; trial < 1000 && checked < 100; ++trial) {
    const std::size_t m = trial % 2 + 1;
    const auto ctx = random_context(m, Rational(-6));
    const auto a = random_series(ctx, rng);
    if (a.is_zero()) continue;
    ScalarSeries inv(ctx, kF5);
    try {
      inv = nov_invert(a);
    } catch (const DomainError&) {
      continue;  // a remainder term on the leading level
    }
    const auto exact = make_context(ctx->weights(), std::nullopt);
    const auto product = nov_mul(a.with_context(exact), inv.with_context(exact));
    const auto one = ScalarSeries::constant(exact, kF5, 1);
    CHECK(above(product, *ctx->cutoff() + lead_level(a)) == one);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("associativity on retained terms") {
  std::mt19937_64 rng(34);
  int checked = 0;
  for (int trial = 0; checked < 100; ++trial) {
    const std::size_t m = trial % 2 + 1;
    const auto ctx = random_context(m, Rational(-4));
    const auto a = random_series(ctx, rng), b = random_series(ctx, rng), c = random_series(ctx, rng);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    const Rational window = *ctx->cutoff() + std::max({lead_level(a), lead_level(c), Rational(0)});
    CHECK(above(nov_mul(nov_mul(a, b), c), window) == above(nov_mul(a, nov_mul(b, c)), window));
    ++checked;
  }
}

TEST_CASE("ring laws without truncation") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ctx = random_context(trial % 2 + 1, Rational(-100));
    const auto exact = make_context(ctx->weights(), std::nullopt);
    const auto a = random_series(exact, rng), b = random_series(exact, rng), c = random_series(exact, rng);
    CHECK(nov_mul(nov_mul(a, b), c) == nov_mul(a, nov_mul(b, c)));
    CHECK(nov_mul(a, b + c) == nov_mul(a, b) + nov_mul(a, c));
    CHECK(nov_mul(a, b) == nov_mul(b, a));
    CHECK((a - a).is_zero());
  }
}
