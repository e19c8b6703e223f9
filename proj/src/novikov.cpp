#include "orbitbound/novikov.hpp"

#include <algorithm>

namespace orbitbound {

namespace {

std::size_t rational_rank(std::vector<Level> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

NovikovContext::NovikovContext(std::vector<Level> weights, std::optional<Rational> cutoff)
    : weights_(std::move(weights)), cutoff_(std::move(cutoff)) {
  if (!weights_.empty()) {
    length_ = weights_.front().size();
    if (length_ == 0) throw DomainError("weight vectors must have at least one component");
    for (const Level& w : weights_)
      if (w.size() != length_) throw DomainError("weight vectors must all have the same length");
    if (rational_rank(weights_) != weights_.size())
      throw DomainError("weight map is not injective: weights are linearly dependent over Q");
  }
}

Level NovikovContext::level(const Exponent& e) const {
  Level out(length_, Rational(0));
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (e[i] == 0) continue;
    for (std::size_t k = 0; k < length_; ++k) out[k] += weights_[i][k] * e[i];
  }
  return out;
}

Rational NovikovContext::primary_level(const Exponent& e) const {
  Rational out = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) out += weights_[i][0] * e[i];
  return out;
}

bool NovikovContext::retained(const Exponent& e) const { return !cutoff_ || primary_level(e) > *cutoff_; }

bool NovikovContext::lower(const Exponent& a, const Exponent& b) const { return level(a) < level(b); }

std::string NovikovContext::variable_name(std::size_t i) const {
  return weights_.size() == 1 ? "t" : "t" + std::to_string(i + 1);
}

ContextPtr make_context(std::vector<Level> weights, std::optional<Rational> cutoff) {
  return std::make_shared<const NovikovContext>(std::move(weights), std::move(cutoff));
}

ContextPtr make_context_1d(std::optional<Rational> cutoff) {
  return make_context({Level{Rational(1)}}, std::move(cutoff));
}

BigInt ScalarRing::normalize(BigInt v) const {
  if (modulus == 0) return v;
  v %= modulus;
  if (v < 0) v += modulus;
  return v;
}

bool ScalarRing::is_unit(const BigInt& a) const {
  if (modulus == 0) return a == 1 || a == -1;
  return normalize(a) != 0 && is_prime(modulus);
}

BigInt ScalarRing::inverse(const BigInt& a) const {
  if (!is_unit(a)) throw DomainError("coefficient " + a.str() + " is not invertible");
  if (modulus == 0) return a;
  const PrimeField f{modulus};
  return f.inv(static_cast<std::uint32_t>(normalize(a)));
}

std::string ScalarRing::format(const BigInt& v) const { return v.str(); }

GroupRing::Value GroupRing::normalize(Value v) const {
  for (auto it = v.begin(); it != v.end();) {
    if (it->first >= group->order()) throw DomainError("group ring element outside the group");
    if (modulus != 0) {
      it->second %= modulus;
      if (it->second < 0) it->second += modulus;
    }
    if (it->second == 0) it = v.erase(it);
    else ++it;
  }
  return v;
}

GroupRing::Value GroupRing::add(const Value& a, const Value& b) const {
  Value out = a;
  for (const auto& [g, c] : b) out[g] += c;
  return normalize(std::move(out));
}

GroupRing::Value GroupRing::neg(const Value& a) const {
  Value out = a;
  for (auto& [g, c] : out) c = -c;
  return normalize(std::move(out));
}

GroupRing::Value GroupRing::mul(const Value& a, const Value& b) const {
  Value out;
  for (const auto& [g, x] : a)
    for (const auto& [h, y] : b) out[group->mul(g, h)] += x * y;
  return normalize(std::move(out));
}

BigInt GroupRing::augmentation(const Value& a) const {
  BigInt s = 0;
  for (const auto& [g, c] : a) s += c;
  return s;
}

std::string GroupRing::format(const Value& v) const {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : v) {
    std::string term = c == 1 ? group->label(g) : (c == -1 ? "-" + group->label(g) : c.str() + "*" + group->label(g));
    if (out.empty()) out = term;
    else if (term[0] == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return v.size() == 1 ? out : "(" + out + ")";
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

ScalarSeries augment(const GroupRingSeries& a) {
  ScalarSeries out(a.context(), ScalarRing{a.ring().modulus});
  for (const auto& [e, c] : a.terms()) out.add_term(e, a.ring().augmentation(c));
  return out;
}

ScalarSeries nov_invert(const ScalarSeries& a) {
  const auto lead = a.leading_exponent();
  if (!lead) throw DomainError("cannot invert zero");
  const ScalarRing& ring = a.ring();
  const NovikovContext& ctx = *a.context();
  const BigInt c_inv = ring.inverse(a.terms().at(*lead));
  Exponent neg_lead = *lead;
  for (auto& x : neg_lead) x = -x;

  // a = c t^lead (1 - r), every term of r strictly below 1.
  // r is computed without the cutoff: the shift by -lead can move terms across it.
  const auto exact = make_context(ctx.weights(), std::nullopt);
  ScalarSeries r_exact(exact, ring);
  for (const auto& [e, c] : a.terms()) {
    if (e == *lead) continue;
    Exponent shifted = add_exponents(e, neg_lead);
    if (ctx.primary_level(shifted) == 0)
      throw DomainError("remainder term shares the leading primary level; the geometric series does not converge");
    r_exact.add_term(std::move(shifted), ring.neg(ring.mul(c, c_inv)));
  }
  if (!r_exact.is_zero() && !ctx.cutoff())
    throw DomainError("inverse is an infinite series; a truncation cutoff is required");

  // S = 1 + r + r^2 + ... keeping terms of primary level > cutoff + lead_1.
  std::optional<Rational> threshold;
  if (ctx.cutoff()) threshold = *ctx.cutoff() + ctx.primary_level(*lead);
  ScalarSeries sum = ScalarSeries::constant(exact, ring, ring.one());
  ScalarSeries power = sum;
  for (;;) {
    power = multiply_above(power, r_exact, threshold);
    if (power.is_zero()) break;
    sum = sum + power;
  }
  ScalarSeries out(a.context(), ring);
  for (const auto& [e, c] : sum.terms()) out.add_term(add_exponents(e, neg_lead), ring.mul(c, c_inv));
  return out;
}

std::vector<ScalarSeries> to_group_components(const GroupRingSeries& a) {
  const GroupRing& ring = a.ring();
  std::vector<ScalarSeries> out(ring.group->order(), ScalarSeries(a.context(), ScalarRing{ring.modulus}));
  for (const auto& [e, c] : a.terms())
    for (const auto& [g, x] : c) out[g].add_term(e, x);
  return out;
}

GroupRingSeries from_group_components(const std::vector<ScalarSeries>& components, const GroupRing& ring) {
  if (components.size() != ring.group->order()) throw DomainError("need one component per group element");
  if (components.empty()) throw DomainError("no components");
  GroupRingSeries out(components.front().context(), ring);
  for (Element g = 0; g < components.size(); ++g)
    for (const auto& [e, x] : components[g].terms()) out.add_term(e, ring.element(g, x));
  return out;
}

}  // namespace orbitbound
