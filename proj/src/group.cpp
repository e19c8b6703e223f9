#include "orbitbound/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "orbitbound/errors.hpp"

namespace orbitbound {

namespace {

std::string default_generator_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "g" + std::to_string(i);
}

std::vector<std::string> default_names(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back(default_generator_name(i));
  return names;
}

Permutation compose(const Permutation& first, const Permutation& second) {
  Permutation out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
  return out;
}

std::vector<Element> members_to_list(const std::vector<bool>& member) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < member.size(); ++i)
    if (member[i]) out.push_back(i);
  return out;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Element>> table, std::vector<std::string> labels,
                                    const GroupLimits& limits) {
  const std::size_t n = table.size();
  if (n == 0) throw DomainError("multiplication table is empty");
  if (n > limits.max_order)
    throw DomainError("group order " + std::to_string(n) + " exceeds cap " + std::to_string(limits.max_order));
  for (const auto& row : table) {
    if (row.size() != n) throw DomainError("multiplication table is not square");
    std::vector<bool> seen(n, false);
    for (Element x : row) {
      if (x >= n) throw DomainError("multiplication table entry out of range");
      if (seen[x]) throw DomainError("multiplication table row is not a permutation");
      seen[x] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      if (seen[table[r][c]]) throw DomainError("multiplication table column is not a permutation");
      seen[table[r][c]] = true;
    }
  }
  std::optional<Element> identity;
  for (Element e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw DomainError("multiplication table has no identity");
  if (n <= limits.associativity_check_cap) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element ab = table[a][b];
        for (Element c = 0; c < n; ++c)
          if (table[ab][c] != table[a][table[b][c]]) throw DomainError("multiplication table is not associative");
      }
  }
  if (!labels.empty()) {
    if (labels.size() != n) throw DomainError("element label count does not match group order");
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DomainError("element labels are not unique");
  }

  FiniteGroup g;
  g.table_ = std::move(table);
  g.identity_ = *identity;
  g.labels_ = std::move(labels);
  g.inverse_.assign(n, 0);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (g.table_[a][b] == g.identity_) g.inverse_[a] = b;
  std::vector<Element> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<Element> gens = g.generating_set(all);
  g.finish(gens, default_names(gens.size()));
  return g;
}

FiniteGroup FiniteGroup::from_permutations(const PermutationGenerators& spec, const GroupLimits& limits) {
  const std::size_t degree = spec.degree;
  for (const auto& p : spec.generators) {
    if (p.size() != degree) throw DomainError("permutation length does not match degree");
    std::vector<bool> seen(degree, false);
    for (std::size_t x : p) {
      if (x >= degree || seen[x]) throw DomainError("generator is not a permutation of {0..degree-1}");
      seen[x] = true;
    }
  }
  std::vector<std::string> names = spec.names.empty() ? default_names(spec.generators.size()) : spec.names;
  if (names.size() != spec.generators.size()) throw DomainError("generator name count mismatch");

  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> elements{id};
  std::map<Permutation, Element> index{{id, 0}};
  const std::size_t k = spec.generators.size();
  std::vector<std::vector<Element>> right(1, std::vector<Element>(k));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t s = 0; s < k; ++s) {
      Permutation prod = compose(elements[i], spec.generators[s]);
      auto [it, inserted] = index.emplace(prod, elements.size());
      if (inserted) {
        if (elements.size() >= limits.max_order)
          throw DomainError("permutation group closure exceeds max order " + std::to_string(limits.max_order));
        elements.push_back(std::move(prod));
        right.emplace_back(k);
      }
      right[i][s] = it->second;
    }
  }

  // Fill the table along the BFS tree: x * (y s) = (x y) s.
  const std::size_t n = elements.size();
  std::vector<Element> parent(n, 0);
  std::vector<std::size_t> via(n, 0);
  std::vector<bool> reached(n, false);
  std::vector<Element> order{0};
  reached[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t s = 0; s < k; ++s) {
      const Element y = right[order[i]][s];
      if (!reached[y]) {
        reached[y] = true;
        parent[y] = order[i];
        via[y] = s;
        order.push_back(y);
      }
    }
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x) {
    table[x][0] = x;
    for (std::size_t i = 1; i < order.size(); ++i) {
      const Element y = order[i];
      table[x][y] = right[table[x][parent[y]]][via[y]];
    }
  }

  FiniteGroup g;
  g.table_ = std::move(table);
  g.identity_ = 0;
  g.inverse_.assign(n, 0);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (g.table_[a][b] == 0) g.inverse_[a] = b;
  std::vector<Element> gens;
  for (std::size_t s = 0; s < k; ++s) gens.push_back(right[0][s]);
  g.finish(std::move(gens), std::move(names));
  return g;
}

void FiniteGroup::finish(std::vector<Element> generators, std::vector<std::string> generator_names) {
  generators_ = std::move(generators);
  generator_names_ = std::move(generator_names);
  const std::size_t n = order();
  spanning_words_.assign(n, Word());
  tree_parent_.assign(n, identity_);
  tree_generator_.assign(n, 0);
  std::vector<bool> reached(n, false);
  std::vector<Element> queue{identity_};
  reached[identity_] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Element x = queue[i];
    for (std::size_t s = 0; s < generators_.size(); ++s) {
      const Element y = mul(x, generators_[s]);
      if (reached[y]) continue;
      reached[y] = true;
      tree_parent_[y] = x;
      tree_generator_[y] = s;
      spanning_words_[y] = spanning_words_[x] * Word::generator(s);
      queue.push_back(y);
    }
  }
  if (queue.size() != n) throw DomainError("generating set does not generate the group");
  if (labels_.empty()) {
    const Presentation names{generator_names_, {}};
    labels_.resize(n);
    for (Element x = 0; x < n; ++x) labels_[x] = names.format(spanning_words_[x]);
  }
}

Element FiniteGroup::power(Element a, long long n) const {
  Element base = n < 0 ? inv(a) : a;
  unsigned long long e = static_cast<unsigned long long>(n < 0 ? -n : n);
  Element result = identity_;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  Element x = a;
  while (x != identity_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::optional<Element> FiniteGroup::find(const std::string& label_or_word) const {
  for (Element x = 0; x < order(); ++x)
    if (labels_[x] == label_or_word) return x;
  try {
    const Word w = parse_word(label_or_word, generator_names_);
    return evaluate(w, generators_);
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

Element FiniteGroup::evaluate(const Word& w, std::span<const Element> generator_images) const {
  Element x = identity_;
  for (const Letter& l : w.letters()) {
    if (l.generator >= generator_images.size()) throw std::out_of_range("word uses an unmapped generator");
    const Element img = generator_images[l.generator];
    x = mul(x, l.exponent > 0 ? img : inv(img));
  }
  return x;
}

std::vector<Element> FiniteGroup::subgroup_generated(std::span<const Element> gens) const {
  std::vector<bool> member(order(), false);
  std::vector<Element> queue{identity_};
  member[identity_] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Element s : gens) {
      const Element y = mul(queue[i], s);
      if (!member[y]) {
        member[y] = true;
        queue.push_back(y);
      }
    }
  return members_to_list(member);
}

std::vector<Element> FiniteGroup::generating_set(std::span<const Element> subgroup) const {
  std::vector<Element> gens;
  std::vector<bool> member(order(), false);
  member[identity_] = true;
  for (Element x : subgroup) {
    if (member[x]) continue;
    gens.push_back(x);
    std::fill(member.begin(), member.end(), false);
    for (Element y : subgroup_generated(gens)) member[y] = true;
  }
  return gens;
}

std::vector<Element> FiniteGroup::normal_closure(std::span<const Element> gens, std::span<const Element> within) const {
  const std::vector<Element> conjugators = generating_set(within);
  std::vector<Element> current(gens.begin(), gens.end());
  std::vector<Element> members = subgroup_generated(current);
  std::vector<bool> member(order(), false);
  for (Element y : members) member[y] = true;
  for (std::size_t i = 0; i < current.size(); ++i) {
    for (Element c : conjugators) {
      const Element conj = mul(mul(inv(c), current[i]), c);
      if (member[conj]) continue;
      current.push_back(conj);
      members = subgroup_generated(current);
      std::fill(member.begin(), member.end(), false);
      for (Element y : members) member[y] = true;
    }
  }
  return members;
}

std::vector<Element> FiniteGroup::normal_closure(std::span<const Element> gens) const {
  std::vector<Element> all(order());
  std::iota(all.begin(), all.end(), 0);
  return normal_closure(gens, all);
}

std::vector<Element> FiniteGroup::derived_subgroup(std::span<const Element> subgroup) const {
  const std::vector<Element> gens = generating_set(subgroup);
  std::vector<Element> commutators;
  for (Element a : gens)
    for (Element b : gens) {
      const Element c = commutator(a, b);
      if (c != identity_) commutators.push_back(c);
    }
  if (commutators.empty()) return {identity_};
  return normal_closure(commutators, subgroup);
}

std::vector<Element> FiniteGroup::conjugacy_class_representatives() const {
  std::vector<bool> assigned(order(), false);
  std::vector<Element> reps;
  for (Element x = 0; x < order(); ++x) {
    if (assigned[x]) continue;
    reps.push_back(x);
    for (Element g = 0; g < order(); ++g) assigned[mul(mul(inv(g), x), g)] = true;
  }
  return reps;
}

bool is_abelian(const FiniteGroup& g) {
  for (Element a : g.generators())
    for (Element b : g.generators())
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

bool is_cyclic(const FiniteGroup& g) {
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) == g.order()) return true;
  return false;
}

bool is_solvable(const FiniteGroup& g) {
  std::vector<Element> h(g.order());
  std::iota(h.begin(), h.end(), 0);
  while (h.size() > 1) {
    std::vector<Element> d = g.derived_subgroup(h);
    if (d.size() == h.size()) return false;
    h = std::move(d);
  }
  return true;
}

bool is_perfect(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return g.derived_subgroup(all).size() == g.order();
}

bool is_simple(const FiniteGroup& g) {
  if (g.order() == 1) return false;
  for (Element x : g.conjugacy_class_representatives()) {
    if (x == g.identity()) continue;
    const Element single[] = {x};
    if (g.normal_closure(single).size() != g.order()) return false;
  }
  return true;
}

namespace {

bool extend_generating_tuple(const FiniteGroup& g, std::size_t target_size, std::vector<Element>& chosen,
                             const std::vector<Element>& members) {
  if (members.size() == g.order()) return true;
  if (chosen.size() == target_size) return false;
  std::vector<bool> member(g.order(), false);
  for (Element y : members) member[y] = true;
  const Element start = chosen.size() >= 2 ? chosen.back() + 1 : 0;
  for (Element y = start; y < g.order(); ++y) {
    if (member[y]) continue;
    chosen.push_back(y);
    const std::vector<Element> next = g.subgroup_generated(chosen);
    if (extend_generating_tuple(g, target_size, chosen, next)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::size_t d_of_group(const FiniteGroup& g) {
  if (g.order() == 1) return 0;
  if (is_cyclic(g)) return 1;
  const std::vector<Element> reps = g.conjugacy_class_representatives();
  for (std::size_t k = 2;; ++k) {
    for (Element x : reps) {
      if (x == g.identity()) continue;
      std::vector<Element> chosen{x};
      if (extend_generating_tuple(g, k, chosen, g.subgroup_generated(chosen))) return k;
    }
  }
}

GroupHomomorphism make_homomorphism(Presentation source, GroupPtr target, std::vector<Element> images) {
  if (!target) throw std::invalid_argument("homomorphism target is null");
  if (images.size() != source.generator_count())
    throw DomainError("homomorphism needs one image per presentation generator");
  for (Element x : images)
    if (x >= target->order()) throw DomainError("homomorphism image out of range");
  for (const Word& r : source.relators)
    if (target->evaluate(r, images) != target->identity())
      throw DomainError("relator " + source.format(r) + " does not map to the identity");
  return GroupHomomorphism{std::move(source), std::move(target), std::move(images)};
}

bool is_surjective(const GroupHomomorphism& hom) {
  return hom.target->subgroup_generated(hom.images).size() == hom.target->order();
}

GroupHomomorphism cayley_presentation(GroupPtr g) {
  Presentation pres{g->generator_names(), {}};
  const auto& gens = g->generators();
  for (Element x = 0; x < g->order(); ++x)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const Element y = g->mul(x, gens[s]);
      if (y != g->identity() && g->tree_parent(y) == x && g->tree_generator(y) == s) continue;
      Word r = g->spanning_word(x) * Word::generator(s) * g->spanning_word(y).inverse();
      if (!r.empty()) pres.relators.push_back(std::move(r));
    }
  std::vector<Element> images = gens;
  return GroupHomomorphism{std::move(pres), std::move(g), std::move(images)};
}

std::vector<BigInt> abelianization(const FiniteGroup& g) {
  auto shared = std::make_shared<const FiniteGroup>(g);
  return abelianization(cayley_presentation(shared).source);
}

PermutationGenerators cyclic_group(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group of order 0");
  PermutationGenerators spec{n, {}, {}};
  if (n > 1) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
    spec.generators.push_back(p);
    spec.names = {"a"};
  }
  return spec;
}

PermutationGenerators dihedral_group(std::size_t n) {
  if (n < 3) throw std::invalid_argument("dihedral group needs n >= 3");
  Permutation r(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = (i + 1) % n;
    s[i] = (n - i) % n;
  }
  return PermutationGenerators{n, {r, s}, {"r", "s"}};
}

PermutationGenerators quaternion_group() {
  // Elements (sign, unit) with unit 0..3 = 1, i, j, k; index = 4*sign + unit.
  // Right regular action x -> x*g.
  static const int unit_product[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_product[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  auto right_mult = [](std::size_t g) {
    Permutation p(8);
    for (std::size_t x = 0; x < 8; ++x) {
      const std::size_t xs = x / 4, xu = x % 4, gs = g / 4, gu = g % 4;
      const std::size_t u = static_cast<std::size_t>(unit_product[xu][gu]);
      const std::size_t s = (xs + gs + static_cast<std::size_t>(sign_product[xu][gu])) % 2;
      p[x] = 4 * s + u;
    }
    return p;
  };
  return PermutationGenerators{8, {right_mult(1), right_mult(2)}, {"i", "j"}};
}

PermutationGenerators symmetric_group(std::size_t n) {
  if (n < 2) return PermutationGenerators{1, {}, {}};
  Permutation t(n), c(n);
  std::iota(t.begin(), t.end(), 0);
  std::swap(t[0], t[1]);
  for (std::size_t i = 0; i < n; ++i) c[i] = (i + 1) % n;
  if (n == 2) return PermutationGenerators{2, {t}, {"a"}};
  return PermutationGenerators{n, {t, c}, {"a", "b"}};
}

PermutationGenerators alternating_group(std::size_t n) {
  if (n < 3) return PermutationGenerators{1, {}, {}};
  Permutation three(n);
  std::iota(three.begin(), three.end(), 0);
  three[0] = 1;
  three[1] = 2;
  three[2] = 0;
  if (n == 3) return PermutationGenerators{3, {three}, {"a"}};
  Permutation cycle(n);
  std::iota(cycle.begin(), cycle.end(), 0);
  if (n % 2 == 1) {
    for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  } else {
    for (std::size_t i = 1; i < n; ++i) cycle[i] = i + 1 < n ? i + 1 : 1;
  }
  return PermutationGenerators{n, {cycle, three}, {"a", "b"}};
}

PermutationGenerators direct_product(const PermutationGenerators& a, const PermutationGenerators& b) {
  PermutationGenerators out;
  out.degree = a.degree + b.degree;
  for (const auto& g : a.generators) {
    Permutation p(out.degree);
    std::iota(p.begin(), p.end(), 0);
    std::copy(g.begin(), g.end(), p.begin());
    out.generators.push_back(std::move(p));
  }
  for (const auto& g : b.generators) {
    Permutation p(out.degree);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = 0; i < b.degree; ++i) p[a.degree + i] = a.degree + g[i];
    out.generators.push_back(std::move(p));
  }
  out.names = default_names(out.generators.size());
  return out;
}

GroupPtr make_group(const PermutationGenerators& gens, const GroupLimits& limits) {
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(gens, limits));
}

}  // namespace orbitbound
