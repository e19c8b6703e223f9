#include "orbitbound/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "orbitbound/errors.hpp"
#include "orbitbound/local_coefficients.hpp"

namespace orbitbound {

namespace {

// Tie-break order; the tags are wire identifiers shared with the JSON report.
const std::vector<std::string> kRuleOrder = {
    // mu_i of a Z-graded complex
    "t:mu1", "c:mu(1)", "c:mu(3)", "c:mu(2)", "p:betti1", "p:mu-2", "c:mu2_first",
    // mu_i of a folded complex
    "t:big-grade", "t:mu+dg(1)", "geq1",
    // orbit counts
    "t:CY-index1(2a)", "t:CY-index1(2b)", "t:CY-index1(2c)", "t:CY-index1(1)", "t:CY-index2(2)", "t:CY-index2(1)",
    "t:monoton-bigChern(1)", "t:monoton-bigChern(2)", "t:monoton-bigChern(3)", "t:monoton(2a)", "t:monoton(1)",
    "t:inf-gen-case",
    // Betti-number rules last
    "p:bn1", "p:b1", "p:bn", "p:z2estimate", "p:CY-b-i", "t:monotonBetti"};

long long ceil_div(long long a, long long b) {
  if (b <= 0) throw std::invalid_argument("ceil_div by non-positive");
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

long long ceil_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt c = num / den;
  if (c * den < num) c += 1;
  return static_cast<long long>(c);
}

std::string describe(const BettiEntry& e, const std::string& what) {
  return e.id + " r=" + std::to_string(e.dim) + " " + what;
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

struct Candidate {
  long long key;
  Bound bound;
};

class Accumulator {
 public:
  void offer(long long key, Bound b) {
    auto it = best_.find(key);
    if (it == best_.end()) {
      best_.emplace(key, std::move(b));
      return;
    }
    if (b.value > it->second.value ||
        (b.value == it->second.value && rule_priority(b.rule) < rule_priority(it->second.rule)))
      it->second = std::move(b);
  }
  std::map<long long, Bound> take() {
    std::map<long long, Bound> out;
    for (auto& [k, b] : best_)
      if (b.value > 0) out.emplace(k, std::move(b));
    return out;
  }

 private:
  std::map<long long, Bound> best_;
};

Bound make_bound(long long value, std::string rule, std::string witness, std::optional<Rational> beta = std::nullopt) {
  return Bound{value, std::move(rule), std::move(witness), std::move(beta)};
}

std::string delta_witness(const GroupInvariants& g) {
  std::string a = g.delta.a_value ? std::to_string(*g.delta.a_value) : "empty";
  return "delta=" + std::to_string(g.delta.delta) + " (A=" + a + ", B=" + std::to_string(g.delta.b_value) + ")";
}

bool finite_nontrivial(const CoverFacts& f) { return f.group && f.group->order > 1; }

std::optional<std::size_t> betti_at(const BettiEntry& e, int degree) {
  auto it = e.betti.find(degree);
  if (it == e.betti.end()) return std::nullopt;
  return it->second;
}

std::vector<Candidate> z_candidates(const CoverFacts& facts, std::vector<std::string>& notes) {
  std::vector<Candidate> out;
  if (finite_nontrivial(facts)) {
    const GroupInvariants& g = *facts.group;
    out.push_back({1, make_bound(static_cast<long long>(g.delta.delta), "t:mu1", delta_witness(g))});
    if (g.solvable || g.simple)
      out.push_back({1, make_bound(static_cast<long long>(g.d), "c:mu(1)",
                                   "d(G)=" + std::to_string(g.d) + (g.solvable ? ", G solvable" : ", G simple"))});
    if (!g.cyclic) out.push_back({1, make_bound(2, "c:mu(3)", "G not cyclic")});
  }
  if (finite_nontrivial(facts)) out.push_back({1, make_bound(1, "c:mu(2)", "G nontrivial")});
  else if (facts.pi1_nontrivial && !facts.infinite) out.push_back({1, make_bound(1, "c:mu(2)", "pi_1 nontrivial")});
  if (facts.infinite) out.push_back({1, make_bound(1, "p:betti1", "epimorphism onto an infinite group")});

  for (const BettiEntry& e : facts.betti) {
    const auto r = static_cast<long long>(e.dim);
    for (const auto& [deg, b] : e.betti) {
      const Rational beta(static_cast<long long>(b), r);
      out.push_back({deg, make_bound(ceil_div(static_cast<long long>(b), r), "p:bn",
                                     describe(e, "b" + std::to_string(deg) + "=" + std::to_string(b)), beta)});
    }
    const auto b0 = betti_at(e, 0), b1 = betti_at(e, 1);
    if (!e.trivial && b0 && *b0 == 0 && b1)
      out.push_back({1, make_bound(ceil_div(static_cast<long long>(*b1), r) + 1, "p:bn1",
                                   describe(e, "b0=0 b1=" + std::to_string(*b1)), Rational(static_cast<long long>(*b1), r))});
  }

  // Degree 2.
  bool any_b2 = false;
  for (const BettiEntry& e : facts.betti) any_b2 = any_b2 || betti_at(e, 2).has_value();
  if (!any_b2) {
    notes.push_back("degree-2 rules skipped: no Betti numbers in degree 2 (a complex or classical Betti data is needed)");
    return out;
  }
  if (facts.group && facts.universal) {
    const GroupInvariants& g = *facts.group;
    for (const BettiEntry& e : facts.betti) {
      if (!e.trivial) continue;
      const auto b1 = betti_at(e, 1), b2 = betti_at(e, 2);
      if (b2 && g.order > 1 && g.perfect)
        out.push_back({2, make_bound(static_cast<long long>(*b2) + 2, "p:mu-2", describe(e, "b2=" + std::to_string(*b2)))});
      if (b1 && b2) {
        const long long v = static_cast<long long>(g.delta.delta) - static_cast<long long>(*b1) + static_cast<long long>(*b2);
        out.push_back({2, make_bound(v, "c:mu2_first",
                                     delta_witness(g) + ", " + describe(e, "b1=" + std::to_string(*b1) + " b2=" + std::to_string(*b2)))});
      }
    }
  }
  // B_1 is taken per coefficient field over the scanned representations.
  std::map<std::uint32_t, std::pair<Rational, std::string>> b1_max;
  for (const BettiEntry& e : facts.betti) {
    const auto b0 = betti_at(e, 0), b1 = betti_at(e, 1);
    if (!b0 || !b1) continue;
    const Rational v(static_cast<long long>(*b1) - static_cast<long long>(*b0), static_cast<long long>(e.dim));
    auto it = b1_max.find(e.field);
    if (it == b1_max.end() || v > it->second.first) b1_max[e.field] = {v, e.id};
  }
  for (const BettiEntry& e : facts.betti) {
    const auto b0 = betti_at(e, 0), b1 = betti_at(e, 1), b2 = betti_at(e, 2);
    if (!b0 || !b1 || !b2) continue;
    const auto& [big_b1, from] = b1_max.at(e.field);
    const Rational v = big_b1 + Rational(static_cast<long long>(*b2) - static_cast<long long>(*b1) + static_cast<long long>(*b0),
                                         static_cast<long long>(e.dim));
    out.push_back({2, make_bound(ceil_rational(v), "p:b1",
                                 "B1=" + rational_str(big_b1) + " via " + from + ", " +
                                     describe(e, "b0=" + std::to_string(*b0) + " b1=" + std::to_string(*b1) +
                                                     " b2=" + std::to_string(*b2)),
                                 v)});
  }
  return out;
}

std::vector<Candidate> folded_candidates(const CoverFacts& facts, int k, std::optional<int> dim_x,
                                         std::vector<JointBound>& joint) {
  if (k < 2) throw DomainError("fold modulus must be at least 2");
  std::vector<Candidate> out;
  const long long one = 1 % k;
  for (const BettiEntry& e : facts.betti) {
    std::map<long long, long long> sums;
    std::map<long long, std::string> parts;
    for (const auto& [deg, b] : e.betti) {
      const long long res = ((deg % k) + k) % k;
      sums[res] += static_cast<long long>(b);
      parts[res] += (parts[res].empty() ? "" : "+") + std::string("b") + std::to_string(deg);
    }
    for (const auto& [res, s] : sums)
      out.push_back({res, make_bound(ceil_div(s, static_cast<long long>(e.dim)), "p:z2estimate",
                                     describe(e, parts[res] + "=" + std::to_string(s)),
                                     Rational(s, static_cast<long long>(e.dim)))});
  }
  if (finite_nontrivial(facts)) {
    const GroupInvariants& g = *facts.group;
    const long long delta = static_cast<long long>(g.delta.delta);
    out.push_back({one, make_bound(std::max<long long>(delta - 1, 1), "t:mu+dg(1)", delta_witness(g))});
    if (dim_x && *dim_x <= k - 2)
      out.push_back({one, make_bound(delta, "t:big-grade",
                                     delta_witness(g) + ", dim X=" + std::to_string(*dim_x) + " <= k-2=" + std::to_string(k - 2))});
    if (g.solvable || g.simple)
      joint.push_back(JointBound{{0, one}, static_cast<long long>(g.d), "t:mu+dg(2)"});
  } else if (facts.pi1_nontrivial && !facts.infinite) {
    out.push_back({one, make_bound(1, "t:mu+dg(1)", "pi_1 nontrivial")});
  }
  if (facts.infinite) out.push_back({one, make_bound(1, "geq1", "epimorphism onto an infinite group")});
  return out;
}

std::map<long long, Bound> accumulate(const std::vector<Candidate>& cands) {
  Accumulator acc;
  for (const Candidate& c : cands) acc.offer(c.key, c.bound);
  return acc.take();
}

std::string betti_entry_id(std::uint32_t field, std::size_t index) {
  return (field == 0 ? std::string("Q") : "F" + std::to_string(field)) + "#" + std::to_string(index);
}

}  // namespace

int rule_priority(const std::string& rule) {
  const auto it = std::find(kRuleOrder.begin(), kRuleOrder.end(), rule);
  return it == kRuleOrder.end() ? static_cast<int>(kRuleOrder.size()) : static_cast<int>(it - kRuleOrder.begin());
}

DeltaBreakdown delta_of_group(const GroupPtr& g, std::uint64_t seed) {
  DeltaBreakdown out;
  if (g->order() == 1) return out;
  const GroupHomomorphism cay = cayley_presentation(g);
  for (std::uint32_t p : prime_divisors(g->order())) {
    const std::vector<Representation> irreps = irreducible_representations(g, p, seed);
    for (std::size_t i = 0; i < irreps.size(); ++i) {
      const Representation& rho = irreps[i];
      const std::size_t b1 = local_betti(cay.source, cay, rho, 1);
      if (is_trivial(rho)) {
        out.b1_trivial[p] = b1;
        out.b_value = std::max(out.b_value, b1);
        continue;
      }
      const std::size_t value = static_cast<std::size_t>(ceil_div(static_cast<long long>(b1), static_cast<long long>(rho.dim))) + 1;
      out.witnesses.push_back(DeltaWitness{p, betti_entry_id(p, i), rho.dim, b1, value});
      out.a_value = std::max(out.a_value.value_or(0), value);
    }
  }
  out.delta = std::max(out.a_value.value_or(1), out.b_value);
  return out;
}

std::size_t sigma_of_finite_group(const GroupPtr& g, std::uint64_t seed) {
  if (g->order() == 1) throw DomainError("sigma is defined here for nontrivial finite groups only");
  return delta_of_group(g, seed).delta;
}

GroupInvariants group_invariants(const GroupPtr& g, std::uint64_t seed) {
  GroupInvariants out;
  out.order = g->order();
  out.cyclic = is_cyclic(*g);
  out.solvable = is_solvable(*g);
  out.simple = is_simple(*g);
  out.perfect = is_perfect(*g);
  out.d = d_of_group(*g);
  out.delta = delta_of_group(g, seed);
  return out;
}

std::vector<BettiEntry> betti_table(const BettiSources& sources, const GroupPtr& g, const BoundsConfig& config,
                                    std::vector<std::string>* notes) {
  std::vector<std::string> local_notes;
  std::vector<std::string>& note = notes ? *notes : local_notes;
  std::vector<std::uint32_t> primes = config.primes.empty() ? prime_divisors(g->order()) : config.primes;
  for (std::uint32_t p : primes)
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  std::uint32_t complex_modulus = 0;
  if (sources.complex && !sources.complex->differentials.empty())
    complex_modulus = sources.complex->differentials.front().ring().modulus;
  if (complex_modulus != 0) {
    if (std::find(primes.begin(), primes.end(), complex_modulus) == primes.end() || primes.size() > 1)
      note.push_back("complex has coefficients mod " + std::to_string(complex_modulus) + "; only that prime is scanned");
    primes = {complex_modulus};
  }
  if (sources.classical && sources.classical->field != 0 &&
      std::find(primes.begin(), primes.end(), sources.classical->field) == primes.end() &&
      (complex_modulus == 0 || complex_modulus == sources.classical->field))
    primes.push_back(sources.classical->field);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  auto fill_classical = [&](BettiEntry& e) {
    if (!sources.classical || sources.classical->field != e.field || !e.trivial) return;
    for (std::size_t i = 0; i < sources.classical->values.size(); ++i) {
      const int deg = static_cast<int>(i);
      const auto it = e.betti.find(deg);
      if (it == e.betti.end()) e.betti[deg] = sources.classical->values[i];
      else if (it->second != sources.classical->values[i])
        note.push_back("classical b" + std::to_string(deg) + " over " + e.id + " disagrees with the computed value " +
                       std::to_string(it->second) + "; the computed value is used");
    }
  };

  std::vector<BettiEntry> out;
  for (std::uint32_t p : primes) {
    const bool scan_irreps = sources.complex || sources.cover;
    std::vector<Representation> irreps = scan_irreps && g->order() > 1
                                             ? irreducible_representations(g, p, config.seed)
                                             : std::vector<Representation>{trivial_representation(g, p)};
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < irreps.size(); ++i) {
      const Representation& rho = irreps[i];
      const bool trivial = is_trivial(rho);
      if (config.rep_dim_cap != 0 && rho.dim > config.rep_dim_cap && !trivial) {
        ++skipped;
        continue;
      }
      BettiEntry e{betti_entry_id(p, i), p, rho.dim, trivial, {}};
      if (sources.complex) {
        const auto b = local_betti_numbers(*sources.complex, rho);
        for (std::size_t k = 0; k < b.size(); ++k) e.betti[sources.complex->grading.degree(k)] = b[k];
      } else if (sources.cover) {
        e.betti[0] = local_betti(sources.cover->source, *sources.cover, rho, 0);
        e.betti[1] = local_betti(sources.cover->source, *sources.cover, rho, 1);
      }
      fill_classical(e);
      if (!e.betti.empty()) out.push_back(std::move(e));
    }
    if (skipped > 0)
      note.push_back(std::to_string(skipped) + " irreducible(s) over F" + std::to_string(p) + " above the dimension cap " +
                     std::to_string(config.rep_dim_cap) + " were not scanned");
  }

  BettiEntry q{betti_entry_id(0, 0), 0, 1, true, {}};
  if (sources.complex && complex_modulus == 0) {
    const auto b = rational_betti_numbers(*sources.complex);
    for (std::size_t k = 0; k < b.size(); ++k) q.betti[sources.complex->grading.degree(k)] = b[k];
  } else if (!sources.complex && sources.cover) {
    q.betti[0] = 1;
    std::size_t free_rank = 0;
    for (const BigInt& d : abelianization(sources.cover->source))
      if (d == 0) ++free_rank;
    q.betti[1] = free_rank;
  }
  fill_classical(q);
  if (!q.betti.empty()) out.push_back(std::move(q));
  return out;
}

DegreeBounds mu_lower_bounds_z(const CoverFacts& facts) {
  DegreeBounds out;
  out.bounds = accumulate(z_candidates(facts, out.notes));
  return out;
}

DegreeBounds mu_lower_bounds_folded(const CoverFacts& facts, int k, std::optional<int> dim_x) {
  DegreeBounds out;
  out.bounds = accumulate(folded_candidates(facts, k, dim_x, out.joint));
  return out;
}

std::string to_string(MonotonicityClass c) {
  switch (c) {
    case MonotonicityClass::SphericallyCalabiYau:
      return "spherically-CY";
    case MonotonicityClass::WeaklyMonotone:
      return "weakly-monotone";
    case MonotonicityClass::General:
      return "general";
  }
  return "?";
}

std::vector<std::string> validate_descriptor(const ManifoldDescriptor& d, std::size_t coset_budget) {
  std::vector<std::string> errors;
  const int n = d.half_dim;
  if (n < 1) errors.push_back("half_dim must be positive (got " + std::to_string(n) + ")");
  if (d.minimal_chern < 0) errors.push_back("minimal_chern must be non-negative (got " + std::to_string(d.minimal_chern) + ")");
  if (d.minimal_chern == 0 && d.monotonicity != MonotonicityClass::SphericallyCalabiYau)
    errors.push_back("minimal_chern = 0 requires class spherically-CY (got " + to_string(d.monotonicity) + ")");
  if (d.minimal_chern > 0 && d.monotonicity == MonotonicityClass::SphericallyCalabiYau)
    errors.push_back("class spherically-CY requires minimal_chern = 0 (got " + std::to_string(d.minimal_chern) + ")");
  if (d.cover) {
    if (!is_surjective(*d.cover)) errors.push_back("cover map is not onto its target group");
    if (d.pi1 && d.pi1->generator_names != d.cover->source.generator_names)
      errors.push_back("cover map is not defined on the pi1 presentation");
  }
  if (d.universal_cover && !d.cover) errors.push_back("universal_cover needs a cover onto a finite group");
  if (d.universal_cover && d.pi1_infinite) errors.push_back("universal_cover contradicts pi1_infinite: the cover group is finite");
  const Presentation* pres = d.pi1 ? &*d.pi1 : (d.cover ? &d.cover->source : nullptr);
  if (pres && (d.pi1_infinite || d.universal_cover)) {
    const CosetEnumerationResult r = coset_enumeration(*pres, coset_budget);
    if (r.order && d.pi1_infinite)
      errors.push_back("pi1_infinite declared but coset enumeration shows |pi1| = " + std::to_string(*r.order));
    if (r.order && d.universal_cover && d.cover && *r.order != d.cover->target->order())
      errors.push_back("universal_cover declared but |pi1| = " + std::to_string(*r.order) + " differs from |G| = " +
                       std::to_string(d.cover->target->order()));
  }
  if (d.complex) {
    const Grading& g = d.complex->grading;
    if (g.cyclic) errors.push_back("descriptor complex must be Z-graded");
    else if (n >= 1 && (g.lo < 0 || g.hi > 2 * n))
      errors.push_back("complex degrees [" + std::to_string(g.lo) + ", " + std::to_string(g.hi) + "] leave [0, " +
                       std::to_string(2 * n) + "]");
    try {
      if (!check_complex(*d.complex)) errors.push_back("complex differentials do not compose to zero");
    } catch (const DomainError& e) {
      errors.push_back(std::string("complex: ") + e.what());
    }
    if (!d.complex->differentials.empty()) {
      const GroupPtr& cg = d.complex->differentials.front().ring().group;
      if (d.cover && cg != d.cover->target) errors.push_back("complex is not over the group ring of the cover group");
      if (!d.cover && cg->order() != 1) errors.push_back("complex over a nontrivial group ring needs a cover");
    }
  }
  if (d.betti) {
    if (d.betti->field != 0 && !is_prime(d.betti->field))
      errors.push_back("betti field must be 0 (rationals) or a prime (got " + std::to_string(d.betti->field) + ")");
    if (n >= 1 && d.betti->values.size() > static_cast<std::size_t>(2 * n + 1))
      errors.push_back("betti lists " + std::to_string(d.betti->values.size()) + " values; at most " +
                       std::to_string(2 * n + 1) + " degrees exist");
  }
  return errors;
}

namespace {

const std::map<std::string, std::string> kCalabiYauTags = {
    {"t:mu1", "t:CY-index1(2a)"}, {"c:mu(1)", "t:CY-index1(2b)"}, {"c:mu(3)", "t:CY-index1(2c)"},
    {"c:mu(2)", "t:CY-index1(1)"}, {"p:betti1", "t:CY-index1(1)"}, {"p:mu-2", "t:CY-index2(2)"},
    {"c:mu2_first", "t:CY-index2(1)"}, {"p:bn1", "p:bn1"}, {"p:b1", "p:b1"}, {"p:bn", "p:CY-b-i"}};

const std::map<std::string, std::string> kMonotoneTags = {{"p:z2estimate", "t:monotonBetti"},
                                                          {"t:mu+dg(1)", "t:monoton(2a)"},
                                                          {"geq1", "t:monoton(1)"},
                                                          {"t:big-grade", "t:monoton-bigChern(1)"}};

const std::map<std::string, std::string> kGeneralTags = {{"p:z2estimate", "t:monotonBetti"}, {"geq1", "t:inf-gen-case"}};

}  // namespace

BoundsReport orbit_report(const ManifoldDescriptor& d, const BoundsConfig& config) {
  const std::vector<std::string> errors = validate_descriptor(d, config.coset_budget);
  if (!errors.empty()) {
    std::string msg = "invalid descriptor:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw DomainError(msg);
  }
  BoundsReport report;
  report.half_dim = d.half_dim;
  report.minimal_chern = d.minimal_chern;
  report.monotonicity = d.monotonicity;
  const long long n = d.half_dim;
  const bool general = d.monotonicity == MonotonicityClass::General;

  GroupPtr g;
  if (d.cover) g = d.cover->target;
  else if (d.complex && !d.complex->differentials.empty()) g = d.complex->differentials.front().ring().group;
  else g = make_group(cyclic_group(1));
  if (d.cover && !general) report.group = group_invariants(g, config.seed);

  CoverFacts facts;
  facts.group = report.group ? &*report.group : nullptr;
  facts.infinite = d.pi1_infinite;
  facts.universal = d.universal_cover;
  facts.pi1_nontrivial = d.pi1_infinite || (report.group && report.group->order > 1);
  if (d.pi1 && !abelianization(*d.pi1).empty()) facts.pi1_nontrivial = true;

  const GroupHomomorphism* cover = d.cover ? &*d.cover : nullptr;
  BettiSources sources{d.complex ? &*d.complex : nullptr, cover, d.betti ? &*d.betti : nullptr};
  facts.betti = betti_table(sources, g, config, &report.notes);
  if (general) {
    std::erase_if(facts.betti, [](const BettiEntry& e) { return e.field != 0; });
    facts.group = nullptr;
    facts.universal = false;
    facts.pi1_nontrivial = false;
    report.notes.push_back("general class: only the infinite-pi_1 rule and rational Betti rules apply");
    if (facts.betti.empty()) report.notes.push_back("no rational Betti numbers available");
  }
  report.betti = facts.betti;

  Accumulator acc;
  std::vector<std::string> notes;
  if (d.minimal_chern == 0) {
    for (Candidate& c : z_candidates(facts, notes)) {
      c.bound.rule = kCalabiYauTags.at(c.bound.rule);
      acc.offer(c.key - n, std::move(c.bound));
    }
    if (facts.group && facts.universal)
      notes.push_back("p_{2-n} >= mu_2(pi_1) also holds; mu_2 of a group is not computed");
  } else {
    const int k = 2 * d.minimal_chern;
    const auto& tags = general ? kGeneralTags : kMonotoneTags;
    std::vector<JointBound> joint;
    for (Candidate& c : folded_candidates(facts, k, 2 * d.half_dim, joint)) {
      c.bound.rule = tags.at(c.bound.rule);
      acc.offer(c.key - n, std::move(c.bound));
    }
    if (!general && facts.group && facts.group->order > 1 && d.minimal_chern >= d.half_dim + 1) {
      const GroupInvariants& gi = *facts.group;
      if (gi.solvable || gi.simple)
        acc.offer(1 - n, make_bound(static_cast<long long>(gi.d), "t:monoton-bigChern(2)", "d(G)=" + std::to_string(gi.d)));
      if (!gi.cyclic) acc.offer(1 - n, make_bound(2, "t:monoton-bigChern(3)", "G not cyclic"));
    }
    for (JointBound& j : joint) {
      for (long long& key : j.keys) key -= n;
      report.joint.push_back(std::move(j));
    }
  }
  report.per_index = acc.take();
  report.notes.insert(report.notes.end(), notes.begin(), notes.end());

  std::vector<Bound> totals;
  long long sum = 0;
  for (const auto& [j, b] : report.per_index) sum += b.value;
  totals.push_back(make_bound(sum, "sum", "sum of per-index bounds"));
  if (d.minimal_chern > 0 && !general && facts.group && facts.group->order > 1) {
    const GroupInvariants& gi = *facts.group;
    totals.push_back(make_bound(static_cast<long long>(gi.delta.delta), "t:monoton(2a)", delta_witness(gi)));
    if (gi.solvable || gi.simple)
      totals.push_back(make_bound(static_cast<long long>(gi.d), "t:monoton(2b)", "d(G)=" + std::to_string(gi.d)));
    if (!gi.cyclic) totals.push_back(make_bound(2, "t:monoton(2c)", "G not cyclic"));
  }
  report.total = totals.front();
  for (const Bound& b : totals)
    if (b.value > report.total.value) report.total = b;
  return report;
}

}  // namespace orbitbound
