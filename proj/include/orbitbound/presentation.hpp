#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbitbound/linalg.hpp"

namespace orbitbound {

struct Letter {
  std::size_t generator;
  int exponent;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A freely reduced word in a free group.
class Word {
 public:
  Word() = default;
  /// Freely reduces the given letters.
  explicit Word(std::vector<Letter> letters);

  static Word generator(std::size_t g, int exponent = 1) { return Word({Letter{g, exponent}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word power(long long n) const;
  /// Exponent sum of generator g.
  long long exponent_sum(std::size_t g) const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;

  std::size_t generator_count() const { return generator_names.size(); }
  /// Renders a word with this presentation's names, e.g. "ab^-1".
  std::string format(const Word& w) const;
};

/// Parses the ASCII word grammar: juxtaposition is product, `x^n` (n may be
/// negative) is a power, parentheses group, `1` is the empty word, `*` and
/// whitespace are ignored. Generator names are matched longest-first.
/// Throws ParseError (with position) on syntax errors or unknown generators.
Word parse_word(std::string_view text, const std::vector<std::string>& generator_names);

Presentation make_presentation(std::vector<std::string> generator_names,
                               const std::vector<std::string>& relator_texts);

/// Relator exponent-sum matrix: one row per relator, one column per generator.
IntegerMatrix exponent_matrix(const Presentation& pres);

/// Invariants of the abelianization: the non-unit Smith invariants followed by
/// one 0 per free cyclic summand. Trivial abelianization gives an empty list.
std::vector<BigInt> abelianization(const Presentation& pres);

/// dim(G^ab (x) F_p): number of invariants divisible by p (0 counts).
std::size_t abelian_rank_mod_p(const std::vector<BigInt>& invariants, std::uint32_t p);

struct CosetEnumerationResult {
  std::optional<std::size_t> order;  // nullopt means Unknown (budget exhausted)
  std::size_t cosets_defined = 0;
};

/// Todd-Coxeter (HLT strategy) over the trivial subgroup with a hard budget on
/// the number of cosets defined. Never claims infiniteness.
CosetEnumerationResult coset_enumeration(const Presentation& pres, std::size_t budget);

}  // namespace orbitbound
