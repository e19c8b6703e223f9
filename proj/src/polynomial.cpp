#include "orbitbound/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbitbound {

FpPoly::FpPoly(std::uint32_t prime, std::vector<std::uint32_t> coefficients)
    : p_(prime), c_(std::move(coefficients)) {
  for (auto& x : c_) x %= p_;
  normalize();
}

FpPoly FpPoly::monomial(std::uint32_t prime, std::size_t degree, std::uint32_t coefficient) {
  std::vector<std::uint32_t> c(degree + 1, 0);
  c[degree] = coefficient;
  return FpPoly(prime, std::move(c));
}

void FpPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
  if (c_.empty()) return *this;
  const PrimeField f{p_};
  const std::uint32_t s = f.inv(c_.back());
  FpPoly out = *this;
  for (auto& x : out.c_) x = f.mul(x, s);
  return out;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  const PrimeField f{a.p_};
  FpPoly out = a.c_.size() >= b.c_.size() ? a : b;
  const FpPoly& other = a.c_.size() >= b.c_.size() ? b : a;
  for (std::size_t i = 0; i < other.c_.size(); ++i) out.c_[i] = f.add(out.c_[i], other.c_[i]);
  out.normalize();
  return out;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  const PrimeField f{a.p_};
  FpPoly out = a;
  if (out.c_.size() < b.c_.size()) out.c_.resize(b.c_.size(), 0);
  for (std::size_t i = 0; i < b.c_.size(); ++i) out.c_[i] = f.sub(out.c_[i], b.c_[i]);
  out.normalize();
  return out;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
  const PrimeField f{a.p_};
  std::vector<std::uint32_t> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a.c_[i], b.c_[j]));
  }
  return FpPoly(a.p_, std::move(c));
}

void FpPoly::divmod(const FpPoly& a, const FpPoly& b, FpPoly& quotient, FpPoly& remainder) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const PrimeField f{a.p_};
  std::vector<std::uint32_t> r = a.c_;
  const std::size_t db = b.c_.size() - 1;
  const std::uint32_t lead_inv = f.inv(b.c_.back());
  std::vector<std::uint32_t> q(r.size() >= b.c_.size() ? r.size() - db : 0, 0);
  for (std::size_t i = r.size(); i-- > db;) {
    const std::uint32_t coef = f.mul(r[i], lead_inv);
    if (coef == 0) continue;
    q[i - db] = coef;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(coef, b.c_[j]));
  }
  quotient = FpPoly(a.p_, std::move(q));
  remainder = FpPoly(a.p_, std::move(r));
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  FpPoly::divmod(a, b, q, r);
  return r;
}

FpPoly operator/(const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  FpPoly::divmod(a, b, q, r);
  return q;
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly powmod(const FpPoly& base, std::uint64_t exponent, const FpPoly& modulus) {
  FpPoly result = FpPoly::constant(modulus.prime(), 1) % modulus;
  FpPoly b = base % modulus;
  while (exponent > 0) {
    if (exponent & 1U) result = (result * b) % modulus;
    b = (b * b) % modulus;
    exponent >>= 1U;
  }
  return result;
}

FpPoly characteristic_polynomial(const PrimeFieldMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  const std::uint32_t p = m.prime();
  const PrimeField f{p};
  PrimeFieldMatrix h = m;

  // Similarity transform to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = n;
    for (std::size_t i = j + 1; i < n; ++i)
      if (h(i, j) != 0) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) {
        const auto t = h(piv, c);
        h.set(piv, c, h(j + 1, c));
        h.set(j + 1, c, t);
      }
      for (std::size_t r = 0; r < n; ++r) {
        const auto t = h(r, piv);
        h.set(r, piv, h(r, j + 1));
        h.set(r, j + 1, t);
      }
    }
    const std::uint32_t inv = f.inv(h(j + 1, j));
    for (std::size_t i = j + 2; i < n; ++i) {
      const std::uint32_t u = f.mul(h(i, j), inv);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h.set(i, c, f.sub(h(i, c), f.mul(u, h(j + 1, c))));
      for (std::size_t r = 0; r < n; ++r) h.set(r, j + 1, f.add(h(r, j + 1), f.mul(u, h(r, i))));
    }
  }

  std::vector<FpPoly> chain;
  chain.push_back(FpPoly::constant(p, 1));
  const FpPoly x = FpPoly::monomial(p, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    FpPoly next = (x - FpPoly::constant(p, h(k - 1, k - 1))) * chain[k - 1];
    std::uint32_t t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t = f.mul(t, h(k - i, k - i - 1));
      const std::uint32_t coef = f.mul(t, h(k - i - 1, k - 1));
      if (coef != 0) next = next - FpPoly::constant(p, coef) * chain[k - i - 1];
    }
    chain.push_back(std::move(next));
  }
  return chain.back();
}

namespace {

FpPoly random_poly_below(std::uint32_t p, int degree, std::mt19937_64& rng) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(std::max(degree, 1)));
  for (auto& x : c) x = static_cast<std::uint32_t>(rng() % p);
  return FpPoly(p, std::move(c));
}

// d is a product of distinct monic irreducibles, all of degree e.
void split_equal_degree(const FpPoly& d, int e, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (d.degree() == e) {
    out.push_back(d.monic());
    return;
  }
  const std::uint32_t p = d.prime();
  for (;;) {
    const FpPoly a = random_poly_below(p, d.degree(), rng);
    if (a.degree() < 1) continue;
    FpPoly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(e-1)).
      FpPoly term = a;
      b = a;
      for (int i = 1; i < e; ++i) {
        term = (term * term) % d;
        b = b + term;
      }
    } else {
      // a^((p^e - 1)/2) = (a^(1 + p + ... + p^(e-1)))^((p-1)/2).
      FpPoly frob = a;
      FpPoly norm = a;
      for (int i = 1; i < e; ++i) {
        frob = powmod(frob, p, d);
        norm = (norm * frob) % d;
      }
      b = powmod(norm, (p - 1) / 2, d) - FpPoly::constant(p, 1);
    }
    const FpPoly g = gcd(d, b);
    if (g.degree() > 0 && g.degree() < d.degree()) {
      split_equal_degree(g, e, rng, out);
      split_equal_degree((d / g).monic(), e, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FpPoly> distinct_irreducible_factors(const FpPoly& f, std::mt19937_64& rng) {
  if (f.degree() < 1) return {};
  const std::uint32_t p = f.prime();
  std::vector<FpPoly> out;
  FpPoly g = f.monic();
  const FpPoly x = FpPoly::monomial(p, 1);
  FpPoly h = x % g;
  int e = 1;
  while (g.degree() >= 2 * e) {
    h = powmod(h, p, g);  // x^(p^e) mod g
    const FpPoly d = gcd(g, h - x);
    if (d.degree() > 0) {
      split_equal_degree(d, e, rng, out);
      for (;;) {
        const FpPoly c = gcd(g, d);
        if (c.degree() < 1) break;
        g = (g / c).monic();
      }
      h = h % g;
    }
    ++e;
  }
  if (g.degree() > 0) out.push_back(g.monic());
  std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coefficients().rbegin(), a.coefficients().rend(),
                                        b.coefficients().rbegin(), b.coefficients().rend());
  });
  return out;
}

PrimeFieldMatrix evaluate(const FpPoly& f, const PrimeFieldMatrix& m) {
  const std::size_t n = m.rows();
  PrimeFieldMatrix result(m.prime(), n, n);
  const auto& c = f.coefficients();
  const PrimeField field{m.prime()};
  for (std::size_t k = c.size(); k-- > 0;) {
    result = result * m;
    for (std::size_t i = 0; i < n; ++i) result.set(i, i, field.add(result(i, i), c[k]));
  }
  return result;
}

}  // namespace orbitbound
