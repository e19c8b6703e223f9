#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitbound/complex.hpp"
#include "orbitbound/group.hpp"
#include "orbitbound/novikov.hpp"
#include "orbitbound/presentation.hpp"
#include "orbitbound/representation.hpp"

namespace orbitbound {

struct DeltaWitness {
  std::uint32_t prime = 0;
  std::string rep_id;
  std::size_t dim = 0;
  std::size_t b1 = 0;
  std::size_t value = 0;  // ceil(b1 / dim) + 1
};

struct DeltaBreakdown {
  std::size_t delta = 0;
  std::optional<std::size_t> a_value;  // nullopt: no nontrivial irreducible for any p | |G|
  std::size_t b_value = 0;
  std::map<std::uint32_t, std::size_t> b1_trivial;  // b_1(G, F_p) per prime
  std::vector<DeltaWitness> witnesses;
};

/// delta(G) = max(A, B) with A over nontrivial F_p-irreducibles, p | |G|, and
/// B = max_p b_1(G, F_p). Trivial group: 0.
DeltaBreakdown delta_of_group(const GroupPtr& g, std::uint64_t seed = 0);
/// delta for finite nontrivial G; throws DomainError for the trivial group.
std::size_t sigma_of_finite_group(const GroupPtr& g, std::uint64_t seed = 0);

struct GroupInvariants {
  std::size_t order = 1;
  bool cyclic = true;
  bool solvable = true;
  bool simple = false;
  bool perfect = true;
  std::size_t d = 0;
  DeltaBreakdown delta;
};
GroupInvariants group_invariants(const GroupPtr& g, std::uint64_t seed = 0);

struct BoundsConfig {
  std::vector<std::uint32_t> primes;  // empty: the primes dividing |G|
  std::uint64_t seed = 0;
  std::size_t rep_dim_cap = 0;        // 0: no cap on the irreducibles scanned
  std::size_t coset_budget = 1000000;
};

/// Betti numbers of X with coefficients in one representation. field 0 is Q
/// (trivial coefficients only). Missing degrees are unknown.
struct BettiEntry {
  std::string id;
  std::uint32_t field = 0;
  std::size_t dim = 1;
  bool trivial = true;
  std::map<int, std::size_t> betti;
};

/// Trivial-coefficient Betti numbers given directly, by degree from 0.
struct ClassicalBetti {
  std::uint32_t field = 0;
  std::vector<std::size_t> values;
};

/// Where Betti numbers of X come from: a complex over Z[G] (all degrees), a
/// presentation of pi_1 with the cover map (degrees 0 and 1), and/or
/// classical Betti numbers.
struct BettiSources {
  const GradedComplex* complex = nullptr;
  const GroupHomomorphism* cover = nullptr;
  const ClassicalBetti* classical = nullptr;
};

/// One table row per (field, irreducible) plus the rational trivial row when
/// it can be computed. Irreducibles above rep_dim_cap are skipped (the trivial
/// one never is).
std::vector<BettiEntry> betti_table(const BettiSources& sources, const GroupPtr& g, const BoundsConfig& config,
                                    std::vector<std::string>* notes = nullptr);

struct Bound {
  long long value = 0;
  std::string rule;
  std::string witness;
  std::optional<Rational> beta;  // the rational Betti quotient, for Betti rules
};

struct JointBound {
  std::vector<long long> keys;
  long long value = 0;
  std::string rule;
};

/// Data about X and its cover used by the mu rules.
struct CoverFacts {
  const GroupInvariants* group = nullptr;  // finite G, or null
  bool infinite = false;                   // epimorphism onto an infinite group
  bool universal = false;                  // pi_1(X) -> G is an isomorphism
  bool pi1_nontrivial = false;             // known by any means (cover, presentation)
  std::vector<BettiEntry> betti;
};

struct DegreeBounds {
  std::map<long long, Bound> bounds;  // degree (or residue) -> bound
  std::vector<JointBound> joint;
  std::vector<std::string> notes;
};

/// Lower bounds for mu_i of a Z-graded complex.
DegreeBounds mu_lower_bounds_z(const CoverFacts& facts);
/// Lower bounds for mu_i of the Z/k fold; dim_x enables the dim X <= k-2 rule.
DegreeBounds mu_lower_bounds_folded(const CoverFacts& facts, int k, std::optional<int> dim_x);

enum class MonotonicityClass { SphericallyCalabiYau, WeaklyMonotone, General };
std::string to_string(MonotonicityClass c);

struct ManifoldDescriptor {
  int half_dim = 1;
  int minimal_chern = 0;
  MonotonicityClass monotonicity = MonotonicityClass::SphericallyCalabiYau;
  std::optional<Presentation> pi1;
  bool pi1_infinite = false;
  std::optional<GroupHomomorphism> cover;
  bool universal_cover = false;
  std::optional<GradedComplex> complex;
  std::optional<ClassicalBetti> betti;
};

/// Every violated cross-field constraint, not just the first.
std::vector<std::string> validate_descriptor(const ManifoldDescriptor& d, std::size_t coset_budget = 1000000);

struct BoundsReport {
  int half_dim = 1;
  int minimal_chern = 0;
  MonotonicityClass monotonicity = MonotonicityClass::SphericallyCalabiYau;
  std::map<long long, Bound> per_index;
  std::vector<JointBound> joint;
  Bound total;
  std::optional<GroupInvariants> group;
  std::vector<BettiEntry> betti;
  std::vector<std::string> notes;
};

/// Throws DomainError listing all violations when the descriptor is invalid.
BoundsReport orbit_report(const ManifoldDescriptor& d, const BoundsConfig& config);

/// Position of a rule tag in the tie-break order (lower wins on equal value).
int rule_priority(const std::string& rule);

}  // namespace orbitbound
