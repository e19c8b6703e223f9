#pragma once

// Every group of order <= 24 up to isomorphism, built from multiplication
// tables: metacyclic extensions, split extensions by a cyclic group and
// direct products.

#include <memory>
#include <stdexcept>

#include "support.hpp"

namespace testing {

using Table = std::vector<std::vector<Element>>;

inline GroupPtr from_table(Table t) { return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(std::move(t))); }

/// <a, b | a^m, b^n = a^s, b a b^-1 = a^r>; needs r^n = 1 and r s = s mod m.
/// Element a^i b^j is stored at i + m j.
inline GroupPtr metacyclic(std::size_t m, std::size_t n, std::size_t r, std::size_t s) {
  std::vector<std::size_t> rpow(n + 1, 1 % m);
  for (std::size_t j = 1; j <= n; ++j) rpow[j] = rpow[j - 1] * r % m;
  if (rpow[n] != 1 % m || (r * s) % m != s % m) throw std::logic_error("inconsistent metacyclic data");
  Table t(m * n, std::vector<Element>(m * n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          std::size_t e = i + rpow[j] * k, f = j + l;
          if (f >= n) {
            f -= n;
            e += s;
          }
          t[i + m * j][k + m * l] = e % m + m * f;
        }
  return from_table(std::move(t));
}

inline GroupPtr cyclic(std::size_t n) { return metacyclic(n, 1, 1, 0); }

inline GroupPtr product(const GroupPtr& a, const GroupPtr& b) {
  const std::size_t na = a->order(), nb = b->order();
  Table t(na * nb, std::vector<Element>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y) t[x][y] = a->mul(x % na, y % na) + na * b->mul(x / na, y / na);
  return from_table(std::move(t));
}

/// The automorphism of h with gens[i] -> images[i], extended along a
/// breadth-first search and then checked.
inline std::vector<Element> automorphism(const FiniteGroup& h, const std::vector<Element>& gens,
                                         const std::vector<Element>& images) {
  const std::size_t none = h.order();
  std::vector<Element> phi(h.order(), none);
  phi[h.identity()] = h.identity();
  std::vector<Element> todo{h.identity()};
  for (std::size_t i = 0; i < todo.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Element y = h.mul(todo[i], gens[k]);
      if (phi[y] != none) continue;
      phi[y] = h.mul(phi[todo[i]], images[k]);
      todo.push_back(y);
    }
  std::vector<bool> hit(h.order(), false);
  for (Element e : phi) {
    if (e == none) throw std::logic_error("generators do not generate");
    hit[e] = true;
  }
  for (Element x = 0; x < h.order(); ++x) {
    if (!hit[x]) throw std::logic_error("not a bijection");
    for (Element y = 0; y < h.order(); ++y)
      if (phi[h.mul(x, y)] != h.mul(phi[x], phi[y])) throw std::logic_error("not a homomorphism");
  }
  return phi;
}

/// h x| C_n with the generator acting by phi (phi^n must be the identity).
inline GroupPtr semidirect(const GroupPtr& h, const std::vector<Element>& phi, std::size_t n) {
  const std::size_t nh = h->order();
  std::vector<std::vector<Element>> pw(n + 1, std::vector<Element>(nh));
  for (Element x = 0; x < nh; ++x) pw[0][x] = x;
  for (std::size_t j = 1; j <= n; ++j)
    for (Element x = 0; x < nh; ++x) pw[j][x] = phi[pw[j - 1][x]];
  if (pw[n] != pw[0]) throw std::logic_error("automorphism order does not divide n");
  Table t(nh * n, std::vector<Element>(nh * n));
  for (std::size_t x = 0; x < nh * n; ++x)
    for (std::size_t y = 0; y < nh * n; ++y) {
      const std::size_t j = x / nh, l = y / nh;
      t[x][y] = h->mul(x % nh, pw[j][y % nh]) + nh * ((j + l) % n);
    }
  return from_table(std::move(t));
}

inline std::vector<NamedGroup> groups_of_order_at_most_24() {
  std::vector<NamedGroup> out;
  auto add = [&](std::string name, GroupPtr g) { out.push_back({std::move(name), std::move(g)}); };
  auto C = [](std::size_t n) { return cyclic(n); };
  auto D = [](std::size_t n) { return metacyclic(n, 2, n - 1, 0); };
  auto Dic = [](std::size_t m) { return metacyclic(2 * m, 2, 2 * m - 1, m); };
  auto X = [](const GroupPtr& a, const GroupPtr& b) { return product(a, b); };
  const GroupPtr c2 = C(2), c3 = C(3), c4 = C(4);
  const GroupPtr v4 = X(c2, c2), s3 = D(3), q8 = Dic(2), d4 = D(4);
  const GroupPtr a4 = make_group(alternating_group(4));

  for (std::size_t n = 1; n <= 24; ++n) add("C" + std::to_string(n), C(n));
  add("C2^2", v4);
  add("S3", s3);
  add("C2xC4", X(c2, c4));
  add("C2^3", X(v4, c2));
  add("D4", d4);
  add("Q8", q8);
  add("C3^2", X(c3, c3));
  add("D5", D(5));
  add("C2xC6", X(c2, C(6)));
  add("A4", a4);
  add("D6", D(6));
  add("Dic3", Dic(3));
  add("D7", D(7));
  // order 16
  add("C4^2", X(c4, c4));
  add("C2xC8", X(c2, C(8)));
  add("C2^2xC4", X(v4, c4));
  add("C2^4", X(X(v4, c2), c2));
  add("D8", D(8));
  add("Q16", Dic(4));
  add("SD16", metacyclic(8, 2, 3, 0));
  add("M16", metacyclic(8, 2, 5, 0));
  add("C4:C4", metacyclic(4, 4, 3, 0));
  add("C2xD4", X(c2, d4));
  add("C2xQ8", X(c2, q8));
  {
    // H = C4 x C2 = <a> x <b>, elements i + 4j
    const GroupPtr h = X(c4, c2);
    const Element a = 1, b = 4;
    // c a c^-1 = ab, c b c^-1 = b
    add("C2^2:C4", semidirect(h, automorphism(*h, {a, b}, {h->mul(a, b), b}), 2));
    // the Pauli group: X Z X^-1 = -Z with i central
    add("C4oD4", semidirect(h, automorphism(*h, {a, b}, {a, h->mul(h->mul(a, a), b)}), 2));
  }
  // order 18
  add("D9", D(9));
  add("C3xC6", X(c3, C(6)));
  add("C3xS3", X(c3, s3));
  {
    const GroupPtr h = X(c3, c3);
    add("C3^2:C2", semidirect(h, automorphism(*h, {1, 3}, {h->inv(1), h->inv(3)}), 2));
  }
  // order 20
  add("D10", D(10));
  add("C2xC10", X(c2, C(10)));
  add("Dic5", Dic(5));
  add("F20", metacyclic(5, 4, 2, 0));
  add("C7:C3", metacyclic(7, 3, 2, 0));
  add("D11", D(11));
  // order 24
  add("C2xC12", X(c2, C(12)));
  add("C2^2xC6", X(v4, C(6)));
  add("S4", make_group(symmetric_group(4)));
  {
    // Q8 = <a, b> with a = element 1, b = element 4; an order-3 automorphism a -> b -> ab
    const Element a = 1, b = 4;
    add("SL(2,3)", semidirect(q8, automorphism(*q8, {a, b}, {b, q8->mul(a, b)}), 3));
  }
  add("C3:C8", metacyclic(3, 8, 2, 0));
  add("Dic6", Dic(6));
  add("C4xS3", X(c4, s3));
  add("D12", D(12));
  add("C2xDic3", X(c2, Dic(3)));
  {
    // H = C3 x C2 x C2 = <x> x <u> x <v>; t inverts x, fixes u, sends v to uv
    const GroupPtr h = X(X(c3, c2), c2);
    const Element x = 1, u = 3, v = 6;
    add("C3:D4", semidirect(h, automorphism(*h, {x, u, v}, {h->inv(x), u, h->mul(u, v)}), 2));
  }
  add("C3xD4", X(c3, d4));
  add("C3xQ8", X(c3, q8));
  add("C2xA4", X(c2, a4));
  add("C2^2xS3", X(v4, s3));
  return out;
}

}  // namespace testing
