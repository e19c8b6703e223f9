#include "orbitbound/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "orbitbound/errors.hpp"

namespace orbitbound {

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.exponent != 1 && l.exponent != -1) throw std::invalid_argument("letter exponent must be +-1");
    if (!letters_.empty() && letters_.back().generator == l.generator &&
        letters_.back().exponent == -l.exponent) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back({it->generator, -it->exponent});
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word Word::power(long long n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word result;
  for (long long i = 0; i < (n < 0 ? -n : n); ++i) result = result * base;
  return result;
}

long long Word::exponent_sum(std::size_t g) const {
  long long s = 0;
  for (const Letter& l : letters_)
    if (l.generator == g) s += l.exponent;
  return s;
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> joined = a.letters_;
  joined.insert(joined.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(joined));
}

std::string Presentation::format(const Word& w) const {
  if (w.empty()) return "1";
  const bool short_names = std::all_of(generator_names.begin(), generator_names.end(),
                                       [](const std::string& n) { return n.size() == 1; });
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const long long run = static_cast<long long>(j - i) * ls[i].exponent;
    if (!out.empty() && !short_names) out += '*';
    out += generator_names.at(ls[i].generator);
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<std::string>& names) : text_(text), names_(names) {}

  Word parse() {
    Word w = parse_sequence();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return w;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*'))
      ++pos_;
  }

  Word parse_sequence() {
    Word w;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == ')') return w;
      w = w * parse_term();
    }
  }

  Word parse_term() {
    Word atom;
    const std::size_t start = pos_;
    if (text_[pos_] == '(') {
      ++pos_;
      atom = parse_sequence();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("missing ')'", pos_);
      ++pos_;
    } else if (text_[pos_] == '1' && !matches_name()) {
      ++pos_;
    } else {
      std::size_t best = names_.size();
      std::size_t best_len = 0;
      for (std::size_t g = 0; g < names_.size(); ++g) {
        const std::string& n = names_[g];
        if (!n.empty() && n.size() > best_len && text_.substr(pos_, n.size()) == n) {
          best = g;
          best_len = n.size();
        }
      }
      if (best == names_.size()) {
        if (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_') {
          std::size_t end = pos_;
          while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
            ++end;
          throw ParseError("unknown generator '" + std::string(text_.substr(pos_, end - pos_)) + "'", start);
        }
        throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
      }
      pos_ += best_len;
      atom = Word::generator(best);
    }
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      bool negative = false;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        negative = text_[pos_] == '-';
        ++pos_;
      }
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected integer exponent after '^'", pos_);
      long long e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + (text_[pos_] - '0');
        if (e > 1000000) throw ParseError("exponent too large", pos_);
        ++pos_;
      }
      atom = atom.power(negative ? -e : e);
    }
    return atom;
  }

  bool matches_name() const {
    return std::any_of(names_.begin(), names_.end(), [&](const std::string& n) {
      return !n.empty() && text_.substr(pos_, n.size()) == n;
    });
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& generator_names) {
  return WordParser(text, generator_names).parse();
}

Presentation make_presentation(std::vector<std::string> generator_names,
                               const std::vector<std::string>& relator_texts) {
  for (std::size_t i = 0; i < generator_names.size(); ++i) {
    if (generator_names[i].empty()) throw ParseError("empty generator name");
    for (std::size_t j = 0; j < i; ++j)
      if (generator_names[i] == generator_names[j])
        throw ParseError("duplicate generator name '" + generator_names[i] + "'");
  }
  Presentation pres{std::move(generator_names), {}};
  for (const auto& text : relator_texts) pres.relators.push_back(parse_word(text, pres.generator_names));
  return pres;
}

IntegerMatrix exponent_matrix(const Presentation& pres) {
  IntegerMatrix m(pres.relators.size(), pres.generator_count());
  for (std::size_t r = 0; r < pres.relators.size(); ++r)
    for (const Letter& l : pres.relators[r].letters()) m(r, l.generator) += l.exponent;
  return m;
}

std::vector<BigInt> abelianization(const Presentation& pres) {
  const std::size_t n = pres.generator_count();
  std::vector<BigInt> out;
  if (n == 0) return out;
  const SmithForm snf = smith_normal_form(exponent_matrix(pres));
  std::vector<BigInt> zeros;
  for (const BigInt& d : snf.invariant_factors()) {
    if (d == 1) continue;
    (d == 0 ? zeros : out).push_back(d);
  }
  const std::size_t diag = std::min(pres.relators.size(), n);
  for (std::size_t i = diag; i < n; ++i) zeros.push_back(0);
  out.insert(out.end(), zeros.begin(), zeros.end());
  return out;
}

std::size_t abelian_rank_mod_p(const std::vector<BigInt>& invariants, std::uint32_t p) {
  return static_cast<std::size_t>(std::count_if(invariants.begin(), invariants.end(),
                                                [p](const BigInt& d) { return d % p == 0; }));
}

namespace {

class CosetTable {
 public:
  CosetTable(const Presentation& pres, std::size_t budget)
      : columns_(2 * pres.generator_count()), budget_(budget) {
    for (const Word& r : pres.relators) {
      if (r.empty()) continue;
      std::vector<std::size_t> cols;
      for (const Letter& l : r.letters()) cols.push_back(2 * l.generator + (l.exponent < 0 ? 1 : 0));
      relators_.push_back(std::move(cols));
    }
  }

  std::optional<std::size_t> run() {
    new_coset();
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      for (const auto& rel : relators_) {
        if (!scan_and_fill(c, rel)) return std::nullopt;
        if (!live(c)) break;
      }
      if (!live(c)) continue;
      for (std::size_t x = 0; x < columns_; ++x) {
        if (table_[c][x] == kUndefined && !define(c, x)) return std::nullopt;
      }
    }
    std::size_t count = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (live(c)) ++count;
    return count;
  }

  std::size_t defined() const { return table_.size(); }

 private:
  static constexpr long kUndefined = -1;

  static std::size_t inv(std::size_t x) { return x ^ 1U; }
  bool live(std::size_t c) const { return parent_[c] == c; }

  std::size_t rep(std::size_t k) {
    std::size_t root = k;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[k] != root) {
      const std::size_t next = parent_[k];
      parent_[k] = root;
      k = next;
    }
    return root;
  }

  bool new_coset() {
    if (table_.size() >= budget_) return false;
    table_.emplace_back(columns_, kUndefined);
    parent_.push_back(table_.size() - 1);
    return true;
  }

  bool define(std::size_t c, std::size_t x) {
    if (!new_coset()) return false;
    const std::size_t d = table_.size() - 1;
    table_[c][x] = static_cast<long>(d);
    table_[d][inv(x)] = static_cast<long>(c);
    return true;
  }

  bool scan_and_fill(std::size_t c, const std::vector<std::size_t>& w) {
    std::size_t f = c, b = c;
    std::size_t i = 0;
    std::size_t j = w.size();  // one past the last unscanned letter
    for (;;) {
      while (i < j && table_[f][w[i]] != kUndefined) f = static_cast<std::size_t>(table_[f][w[i++]]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j > i && table_[b][inv(w[j - 1])] != kUndefined) b = static_cast<std::size_t>(table_[b][inv(w[--j])]);
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        table_[f][w[i]] = static_cast<long>(b);
        table_[b][inv(w[i])] = static_cast<long>(f);
        return true;
      }
      if (!define(f, w[i])) return false;
    }
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (l < k) std::swap(k, l);
    parent_[l] = k;
    queue.push_back(l);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t e = queue[qi];
      for (std::size_t x = 0; x < columns_; ++x) {
        if (table_[e][x] == kUndefined) continue;
        const std::size_t f = static_cast<std::size_t>(table_[e][x]);
        table_[f][inv(x)] = kUndefined;
        const std::size_t e1 = rep(e);
        const std::size_t f1 = rep(f);
        if (table_[e1][x] != kUndefined) {
          merge(f1, static_cast<std::size_t>(table_[e1][x]), queue);
        } else if (table_[f1][inv(x)] != kUndefined) {
          merge(e1, static_cast<std::size_t>(table_[f1][inv(x)]), queue);
        } else {
          table_[e1][x] = static_cast<long>(f1);
          table_[f1][inv(x)] = static_cast<long>(e1);
        }
      }
    }
  }

  std::size_t columns_;
  std::size_t budget_;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<std::vector<long>> table_;
  std::vector<std::size_t> parent_;
};

}  // namespace

CosetEnumerationResult coset_enumeration(const Presentation& pres, std::size_t budget) {
  if (budget < 1) throw std::invalid_argument("coset budget must be at least 1");
  CosetTable table(pres, budget);
  CosetEnumerationResult result;
  result.order = table.run();
  result.cosets_defined = table.defined();
  return result;
}

}  // namespace orbitbound
