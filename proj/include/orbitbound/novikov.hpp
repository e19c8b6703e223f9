#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "orbitbound/errors.hpp"
#include "orbitbound/group.hpp"
#include "orbitbound/linalg.hpp"

namespace orbitbound {

using Rational = boost::multiprecision::cpp_rational;
/// A monomial of T = Z^m, as its exponent vector.
using Exponent = std::vector<long long>;
/// Weight of a monomial: a vector in Q^L compared lexicographically.
using Level = std::vector<Rational>;

/// The free abelian group T = Z^m with an injective weight map xi: T -> Q^L
/// (lexicographic order) and an optional truncation cutoff: a term survives
/// iff the first component of its level is strictly above the cutoff. No
/// cutoff means exact Laurent-polynomial arithmetic.
class NovikovContext {
 public:
  /// weights[i] = xi(t_i), all of the same length L >= 1. Throws DomainError
  /// unless the weights are linearly independent over Q (xi injective).
  NovikovContext(std::vector<Level> weights, std::optional<Rational> cutoff);

  std::size_t rank() const { return weights_.size(); }
  std::size_t level_length() const { return length_; }
  const std::vector<Level>& weights() const { return weights_; }
  const std::optional<Rational>& cutoff() const { return cutoff_; }

  Level level(const Exponent& e) const;
  Rational primary_level(const Exponent& e) const;
  /// Whether a term with this monomial survives truncation.
  bool retained(const Exponent& e) const;
  /// Monomial order induced by xi: true iff level(a) < level(b).
  bool lower(const Exponent& a, const Exponent& b) const;

  std::string variable_name(std::size_t i) const;

  friend bool operator==(const NovikovContext& a, const NovikovContext& b) {
    return a.weights_ == b.weights_ && a.cutoff_ == b.cutoff_;
  }

 private:
  std::vector<Level> weights_;
  std::size_t length_ = 1;
  std::optional<Rational> cutoff_;
};

using ContextPtr = std::shared_ptr<const NovikovContext>;
ContextPtr make_context(std::vector<Level> weights, std::optional<Rational> cutoff);
/// Single variable t with xi(t) = 1.
ContextPtr make_context_1d(std::optional<Rational> cutoff);

/// Coefficients in Z (modulus 0) or F_p (modulus p). Values are kept reduced
/// into [0, p).
struct ScalarRing {
  using Value = BigInt;
  std::uint32_t modulus = 0;

  Value normalize(Value v) const;
  bool is_zero(const Value& v) const { return v == 0; }
  Value one() const { return 1; }
  Value add(const Value& a, const Value& b) const { return normalize(a + b); }
  Value neg(const Value& a) const { return normalize(-a); }
  Value mul(const Value& a, const Value& b) const { return normalize(a * b); }
  bool is_unit(const Value& a) const;
  Value inverse(const Value& a) const;
  std::string format(const Value& v) const;
  friend bool operator==(const ScalarRing&, const ScalarRing&) = default;
};

/// The group ring Z[G] (modulus 0) or F_p[G]. A value is a sparse map from
/// group elements to nonzero coefficients.
struct GroupRing {
  using Value = std::map<Element, BigInt>;
  GroupPtr group;
  std::uint32_t modulus = 0;

  Value normalize(Value v) const;
  bool is_zero(const Value& v) const { return v.empty(); }
  Value one() const { return Value{{group->identity(), 1}}; }
  Value element(Element g, BigInt c = 1) const { return normalize(Value{{g, std::move(c)}}); }
  Value add(const Value& a, const Value& b) const;
  Value neg(const Value& a) const;
  Value mul(const Value& a, const Value& b) const;
  /// Sum of coefficients.
  BigInt augmentation(const Value& a) const;
  std::string format(const Value& v) const;
  friend bool operator==(const GroupRing& a, const GroupRing& b) {
    return a.group == b.group && a.modulus == b.modulus;
  }
};

/// A truncated element of Ring((T)): finitely many monomials with nonzero
/// coefficients, all retained by the context's cutoff.
template <class Ring>
class NovikovSeries {
 public:
  using Value = typename Ring::Value;

  NovikovSeries(ContextPtr context, Ring ring) : ctx_(std::move(context)), ring_(std::move(ring)) {}

  static NovikovSeries constant(ContextPtr context, Ring ring, Value c) {
    NovikovSeries s(std::move(context), std::move(ring));
    s.add_term(Exponent(s.ctx_->rank(), 0), std::move(c));
    return s;
  }
  static NovikovSeries monomial(ContextPtr context, Ring ring, Exponent e, Value c) {
    NovikovSeries s(std::move(context), std::move(ring));
    s.add_term(std::move(e), std::move(c));
    return s;
  }

  const ContextPtr& context() const { return ctx_; }
  const Ring& ring() const { return ring_; }
  const std::map<Exponent, Value>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * t^e, dropping it if truncated; removes cancelled terms.
  void add_term(Exponent e, Value c) {
    if (e.size() != ctx_->rank()) throw DomainError("monomial has the wrong number of exponents");
    if (!ctx_->retained(e)) return;
    c = ring_.normalize(std::move(c));
    if (ring_.is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), std::move(c));
      return;
    }
    it->second = ring_.add(it->second, c);
    if (ring_.is_zero(it->second)) terms_.erase(it);
  }

  /// Monomial of maximal level (nullopt for zero).
  std::optional<Exponent> leading_exponent() const {
    std::optional<Exponent> best;
    for (const auto& [e, c] : terms_)
      if (!best || ctx_->lower(*best, e)) best = e;
    return best;
  }

  /// Terms in decreasing level order.
  std::vector<std::pair<Exponent, Value>> ordered_terms() const {
    std::vector<std::pair<Exponent, Value>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return ctx_->lower(b.first, a.first); });
    return out;
  }

  std::string to_string() const;

  friend NovikovSeries operator+(const NovikovSeries& a, const NovikovSeries& b) {
    a.check_compatible(b);
    NovikovSeries out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }
  friend NovikovSeries operator-(const NovikovSeries& a) {
    NovikovSeries out(a.ctx_, a.ring_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, a.ring_.neg(c));
    return out;
  }
  friend NovikovSeries operator-(const NovikovSeries& a, const NovikovSeries& b) { return a + (-b); }
  friend bool operator==(const NovikovSeries& a, const NovikovSeries& b) {
    return *a.ctx_ == *b.ctx_ && a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  void check_compatible(const NovikovSeries& other) const {
    if (!(*ctx_ == *other.ctx_)) throw DomainError("Novikov context mismatch");
    if (!(ring_ == other.ring_)) throw DomainError("coefficient ring mismatch");
  }

  /// Same terms in another context (re-truncated).
  NovikovSeries with_context(ContextPtr context) const {
    NovikovSeries out(std::move(context), ring_);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
  }

 private:
  ContextPtr ctx_;
  Ring ring_;
  std::map<Exponent, Value> terms_;
};

using ScalarSeries = NovikovSeries<ScalarRing>;
using GroupRingSeries = NovikovSeries<GroupRing>;

Exponent add_exponents(const Exponent& a, const Exponent& b);

/// Product keeping only terms whose primary level exceeds `threshold` (no
/// threshold: keep everything). The context cutoff still applies.
template <class Ring>
NovikovSeries<Ring> multiply_above(const NovikovSeries<Ring>& a, const NovikovSeries<Ring>& b,
                                   const std::optional<Rational>& threshold) {
  a.check_compatible(b);
  const auto& ctx = *a.context();
  NovikovSeries<Ring> out(a.context(), a.ring());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      Exponent e = add_exponents(ea, eb);
      if (threshold && ctx.primary_level(e) <= *threshold) continue;
      out.add_term(std::move(e), a.ring().mul(ca, cb));
    }
  return out;
}

/// Convolution product truncated at the context cutoff.
template <class Ring>
NovikovSeries<Ring> nov_mul(const NovikovSeries<Ring>& a, const NovikovSeries<Ring>& b) {
  return multiply_above(a, b, std::nullopt);
}

/// Coefficient-wise augmentation Z[G]((T)) -> Z((T)) (or F_p[G] -> F_p).
ScalarSeries augment(const GroupRingSeries& a);

/// Inverse by leading-term normalization and a geometric series. Requires a
/// unit leading coefficient (any nonzero one over F_p). Throws DomainError on
/// zero input, on a non-unit leading coefficient, when the remainder has a
/// term of primary level equal to the leading one (no convergence under the
/// cutoff), or when no cutoff is set and the inverse is not a monomial.
ScalarSeries nov_invert(const ScalarSeries& a);

/// Z[G]((T)) = Z((T))[G] for finite G: component g is sum_t a_{g,t} t.
std::vector<ScalarSeries> to_group_components(const GroupRingSeries& a);
GroupRingSeries from_group_components(const std::vector<ScalarSeries>& components, const GroupRing& ring);

template <class Ring>
std::string NovikovSeries<Ring>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : ordered_terms()) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ctx_->variable_name(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef = ring_.format(c);
    bool negative = false;
    if constexpr (std::is_same_v<Ring, ScalarRing>) {
      if (!coef.empty() && coef[0] == '-') {
        negative = true;
        coef = coef.substr(1);
      }
    }
    std::string term;
    if (mono.empty()) term = coef;
    else if (coef == "1") term = mono;
    else term = coef + "*" + mono;
    if (out.empty()) out = (negative ? "-" : "") + term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace orbitbound
