#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbitbound/presentation.hpp"

namespace orbitbound {

using Element = std::size_t;
using Permutation = std::vector<std::size_t>;

struct GroupLimits {
  std::size_t max_order = 2000;
  /// Full associativity check on tables up to this order.
  std::size_t associativity_check_cap = 512;
};

/// Generators of a permutation group on {0, ..., degree-1}. Each generator is
/// an image array; products compose left to right: (g*h)(i) = h(g(i)).
struct PermutationGenerators {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::vector<std::string> names;  // optional; defaults to a, b, c, ...
};

/// A finite group materialized as a full multiplication table.
class FiniteGroup {
 public:
  /// Validates identity, inverses and (below the cap) associativity. Elements
  /// without labels get "g<index>". A generating set is chosen greedily.
  static FiniteGroup from_table(std::vector<std::vector<Element>> table,
                                std::vector<std::string> labels = {}, const GroupLimits& limits = {});
  /// Closure of the generators; element labels are shortest words in the
  /// generator names (identity is "1"). Throws DomainError past max_order.
  static FiniteGroup from_permutations(const PermutationGenerators& gens, const GroupLimits& limits = {});

  std::size_t order() const { return table_.size(); }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return table_[a][b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element power(Element a, long long n) const;
  Element commutator(Element a, Element b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  std::size_t element_order(Element a) const;

  const std::vector<Element>& generators() const { return generators_; }
  const std::vector<std::string>& generator_names() const { return generator_names_; }
  const std::string& label(Element a) const { return labels_[a]; }
  /// Looks up an element by label, or failing that by parsing it as a word in
  /// the generator names.
  std::optional<Element> find(const std::string& label_or_word) const;

  /// Word in the generators reaching each element along a BFS spanning tree.
  const Word& spanning_word(Element a) const { return spanning_words_[a]; }
  /// BFS parent data: parent element and generator index (unset for identity).
  Element tree_parent(Element a) const { return tree_parent_[a]; }
  std::size_t tree_generator(Element a) const { return tree_generator_[a]; }

  Element evaluate(const Word& w, std::span<const Element> generator_images) const;

  /// Sorted element list of the subgroup generated by gens.
  std::vector<Element> subgroup_generated(std::span<const Element> gens) const;
  /// Normal closure of gens inside the subgroup `within` (sorted list).
  std::vector<Element> normal_closure(std::span<const Element> gens, std::span<const Element> within) const;
  std::vector<Element> normal_closure(std::span<const Element> gens) const;
  std::vector<Element> derived_subgroup(std::span<const Element> subgroup) const;
  /// Greedy generating set of a subgroup, scanning elements by index.
  std::vector<Element> generating_set(std::span<const Element> subgroup) const;
  /// Smallest-index representative of each conjugacy class, ascending.
  std::vector<Element> conjugacy_class_representatives() const;

  const std::vector<std::vector<Element>>& table() const { return table_; }

 private:
  FiniteGroup() = default;
  void finish(std::vector<Element> generators, std::vector<std::string> generator_names);

  std::vector<std::vector<Element>> table_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  std::vector<Element> generators_;
  std::vector<std::string> generator_names_;
  std::vector<std::string> labels_;
  std::vector<Word> spanning_words_;
  std::vector<Element> tree_parent_;
  std::vector<std::size_t> tree_generator_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

bool is_abelian(const FiniteGroup& g);
bool is_cyclic(const FiniteGroup& g);
bool is_solvable(const FiniteGroup& g);
bool is_perfect(const FiniteGroup& g);
bool is_simple(const FiniteGroup& g);

/// Minimal number of generators; 0 for the trivial group. Exhaustive search
/// over tuples of increasing size, first entry up to conjugacy.
std::size_t d_of_group(const FiniteGroup& g);

/// A homomorphism from a finitely presented group onto (or into) a finite group,
/// given by generator images.
struct GroupHomomorphism {
  Presentation source;
  GroupPtr target;
  std::vector<Element> images;
};

/// Checks image count and that every relator maps to the identity.
GroupHomomorphism make_homomorphism(Presentation source, GroupPtr target, std::vector<Element> images);
bool is_surjective(const GroupHomomorphism& hom);

/// Presentation of G read off its Cayley graph (generators of G, one relator per
/// non-tree edge) together with the tautological map onto G.
GroupHomomorphism cayley_presentation(GroupPtr g);

std::vector<BigInt> abelianization(const FiniteGroup& g);

// Builders for standard groups, all as permutation groups.
PermutationGenerators cyclic_group(std::size_t n);
/// Dihedral group of order 2n acting on n points (n >= 3).
PermutationGenerators dihedral_group(std::size_t n);
PermutationGenerators quaternion_group();
PermutationGenerators symmetric_group(std::size_t n);
PermutationGenerators alternating_group(std::size_t n);
PermutationGenerators direct_product(const PermutationGenerators& a, const PermutationGenerators& b);

GroupPtr make_group(const PermutationGenerators& gens, const GroupLimits& limits = {});

}  // namespace orbitbound
