#include "orbitbound/io.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include "orbitbound/errors.hpp"

namespace orbitbound {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where.empty() ? what : where + ": " + what);
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field \"" + key + "\"");
  return *it;
}

long long as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

std::size_t as_count(const Json& j, const std::string& path) {
  const long long v = as_int(j, path);
  if (v < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

const std::string& as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

void check_version(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find("schema_version");
  if (it != j.end() && (!it->is_number_integer() || it->get<long long>() != kSchemaVersion))
    fail(child(path, "schema_version"), "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
}

/// A path string is loaded relative to ctx.base_dir; objects pass through.
std::pair<Json, LoadContext> resolve(const Json& j, const LoadContext& ctx) {
  if (!j.is_string()) return {j, ctx};
  const fs::path p = ctx.base_dir / j.get<std::string>();
  LoadContext next = ctx;
  next.base_dir = p.parent_path();
  return {read_json_file(p), next};
}

std::vector<std::vector<long long>> int_matrix(const Json& j, const std::string& path) {
  std::vector<std::vector<long long>> rows;
  std::size_t i = 0;
  for (const Json& row : as_array(j, path)) {
    const std::string rp = child(path, i++);
    std::vector<long long> r;
    std::size_t k = 0;
    for (const Json& x : as_array(row, rp)) r.push_back(as_int(x, child(rp, k++)));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  for (const Json& x : as_array(j, path)) out.push_back(as_string(x, child(path, i++)));
  return out;
}

Element element_ref(const Json& j, const FiniteGroup& g, const std::string& path) {
  if (j.is_number_integer()) {
    const long long v = j.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= g.order()) fail(path, "element index out of range");
    return static_cast<Element>(v);
  }
  const std::string& s = as_string(j, path);
  std::optional<Element> e;
  try {
    e = g.find(s);
  } catch (const ParseError&) {
  }
  if (!e) fail(path, "unknown group element \"" + s + "\"");
  return *e;
}

Json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

BigInt parse_bigint(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  fail(path, "expected an integer");
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg, e.byte);
  }
}

Json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path.string());
}

GroupPtr parse_group(const Json& input, const LoadContext& ctx0) {
  const auto [j, ctx] = resolve(input, ctx0);
  const std::string path = input.is_string() ? input.get<std::string>() : "group";
  check_version(j, path);
  if (j.contains("family")) {
    const std::string& fam = as_string(j["family"], child(path, "family"));
    const std::size_t n = j.contains("n") ? as_count(j["n"], child(path, "n")) : 0;
    if (fam == "cyclic") return make_group(cyclic_group(n == 0 ? 1 : n), ctx.limits);
    if (fam == "dihedral") return make_group(dihedral_group(n), ctx.limits);
    if (fam == "quaternion") return make_group(quaternion_group(), ctx.limits);
    if (fam == "symmetric") return make_group(symmetric_group(n), ctx.limits);
    if (fam == "alternating") return make_group(alternating_group(n), ctx.limits);
    if (fam == "klein4") return make_group(direct_product(cyclic_group(2), cyclic_group(2)), ctx.limits);
    fail(child(path, "family"), "unknown family \"" + fam + "\"");
  }
  if (j.contains("permutation_generators")) {
    PermutationGenerators gens;
    const auto rows = int_matrix(j["permutation_generators"], child(path, "permutation_generators"));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string gp = child(child(path, "permutation_generators"), i);
      if (i == 0) gens.degree = rows[i].size();
      if (rows[i].size() != gens.degree) fail(gp, "all generators must act on the same number of points");
      Permutation perm;
      std::vector<bool> seen(gens.degree, false);
      for (long long x : rows[i]) {
        if (x < 0 || static_cast<std::size_t>(x) >= gens.degree || seen[static_cast<std::size_t>(x)])
          fail(gp, "not a permutation of 0.." + std::to_string(gens.degree == 0 ? 0 : gens.degree - 1));
        seen[static_cast<std::size_t>(x)] = true;
        perm.push_back(static_cast<std::size_t>(x));
      }
      gens.generators.push_back(std::move(perm));
    }
    if (j.contains("generator_names")) {
      gens.names = string_list(j["generator_names"], child(path, "generator_names"));
      if (gens.names.size() != gens.generators.size()) fail(child(path, "generator_names"), "one name per generator");
    }
    return make_group(gens, ctx.limits);
  }
  if (j.contains("multiplication_table")) {
    const auto rows = int_matrix(j["multiplication_table"], child(path, "multiplication_table"));
    std::vector<std::vector<Element>> table;
    for (const auto& r : rows) {
      std::vector<Element> row;
      for (long long x : r) {
        if (x < 0) fail(child(path, "multiplication_table"), "negative entry");
        row.push_back(static_cast<Element>(x));
      }
      table.push_back(std::move(row));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = string_list(j["labels"], child(path, "labels"));
    if (table.size() > ctx.limits.max_order)
      throw DomainError("group order " + std::to_string(table.size()) + " exceeds max_order " +
                        std::to_string(ctx.limits.max_order));
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(std::move(table), std::move(labels), ctx.limits));
  }
  fail(path, "expected \"permutation_generators\", \"multiplication_table\" or \"family\"");
}

Presentation parse_presentation(const Json& input, const LoadContext& ctx0) {
  const auto [j, ctx] = resolve(input, ctx0);
  const std::string path = input.is_string() ? input.get<std::string>() : "presentation";
  check_version(j, path);
  const auto gens = string_list(require(j, "generators", path), child(path, "generators"));
  std::vector<std::string> rels;
  if (j.contains("relators")) rels = string_list(j["relators"], child(path, "relators"));
  try {
    return make_presentation(gens, rels);
  } catch (const ParseError& e) {
    fail(child(path, "relators"), e.what());
  }
}

Representation parse_representation(const Json& input, const GroupPtr& group, const LoadContext& ctx0) {
  const auto [j, ctx] = resolve(input, ctx0);
  const std::string path = input.is_string() ? input.get<std::string>() : "representation";
  check_version(j, path);
  const long long p = as_int(require(j, "prime", path), child(path, "prime"));
  const std::size_t dim = as_count(require(j, "dim", path), child(path, "dim"));
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) fail(child(path, "prime"), std::to_string(p) + " is not prime");
  const Json& imgs = as_array(require(j, "generator_images", path), child(path, "generator_images"));
  std::vector<PrimeFieldMatrix> mats;
  std::size_t i = 0;
  for (const Json& m : imgs) {
    const std::string mp = child(child(path, "generator_images"), i++);
    const auto rows = int_matrix(m, mp);
    if (rows.size() != dim) fail(mp, "expected " + std::to_string(dim) + " rows");
    for (const auto& r : rows)
      if (r.size() != dim) fail(mp, "expected " + std::to_string(dim) + " columns");
    mats.push_back(dim == 0 ? PrimeFieldMatrix(static_cast<std::uint32_t>(p), 0, 0)
                            : PrimeFieldMatrix::from_rows(static_cast<std::uint32_t>(p), rows));
  }
  return make_representation(group, static_cast<std::uint32_t>(p), std::move(mats));
}

Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      const auto slash = s.find('/');
      if (slash == std::string::npos) return Rational(BigInt(s));
      const BigInt den(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
      return Rational(BigInt(s.substr(0, slash)), den);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
    }
    throw ParseError("not a rational number: \"" + s + "\"");
  }
  throw ParseError("expected a rational (integer or \"p/q\" string)");
}

GroupRing::Value parse_group_ring_value(const Json& j, const GroupRing& ring) {
  if (j.is_number_integer() || j.is_string()) return ring.element(ring.group->identity(), parse_bigint(j, "coefficient"));
  GroupRing::Value out;
  std::size_t i = 0;
  for (const Json& pair : as_array(j, "coefficient")) {
    const std::string p = child("coefficient", i++);
    if (!pair.is_array() || pair.size() != 2) fail(p, "expected [int, \"element\"]");
    out = ring.add(out, ring.element(element_ref(pair[1], *ring.group, child(p, 1)), parse_bigint(pair[0], child(p, 0))));
  }
  return out;
}

namespace {

bool is_group_ring_literal(const Json& j) {
  // [[int, "label"], ...] as opposed to a term list [[coeff, [e...]], ...]
  if (!j.is_array() || j.empty()) return false;
  for (const Json& x : j)
    if (!x.is_array() || x.size() != 2 || !(x[1].is_string() || x[1].is_number_integer()) || !x[0].is_number_integer())
      return false;
  return std::any_of(j.begin(), j.end(), [](const Json& x) { return x[1].is_string(); });
}

Exponent parse_exponent(const Json& j, std::size_t rank, const std::string& path) {
  Exponent e;
  std::size_t i = 0;
  for (const Json& x : as_array(j, path)) e.push_back(as_int(x, child(path, i++)));
  if (e.size() != rank)
    fail(path, "monomial has " + std::to_string(e.size()) + " exponents, expected " + std::to_string(rank));
  return e;
}

template <class Ring, class ParseCoeff>
NovikovSeries<Ring> parse_series(const Json& j, const Ring& ring, const ContextPtr& context, ParseCoeff coeff) {
  NovikovSeries<Ring> s(context, ring);
  const Exponent zero(context->rank(), 0);
  if (j.is_number_integer() || j.is_string()) {
    s.add_term(zero, coeff(j));
    return s;
  }
  if constexpr (std::is_same_v<Ring, GroupRing>) {
    if (is_group_ring_literal(j)) {
      s.add_term(zero, coeff(j));
      return s;
    }
  }
  std::size_t i = 0;
  for (const Json& term : as_array(j, "series")) {
    const std::string p = child("series", i++);
    if (!term.is_array() || term.size() != 2) fail(p, "expected [coefficient, [exponents]]");
    s.add_term(parse_exponent(term[1], context->rank(), child(p, 1)), coeff(term[0]));
  }
  return s;
}

/// Largest exponent-vector length appearing in a term list (nullopt if none).
void scan_rank(const Json& j, std::optional<std::size_t>& rank) {
  if (!j.is_array() || is_group_ring_literal(j)) return;
  for (const Json& term : j)
    if (term.is_array() && term.size() == 2 && term[1].is_array()) {
      const std::size_t m = term[1].size();
      if (rank && *rank != m) throw ParseError("monomials with different numbers of exponents");
      rank = m;
    }
}

std::vector<Level> parse_weights(const Json& j, const std::string& path) {
  std::vector<Level> out;
  std::size_t i = 0;
  for (const Json& w : as_array(j, path)) {
    const std::string wp = child(path, i++);
    Level l;
    try {
      if (w.is_array())
        for (const Json& x : w) l.push_back(parse_rational(x));
      else
        l.push_back(parse_rational(w));
    } catch (const ParseError& e) {
      fail(wp, e.what());
    }
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<Level> standard_weights(std::size_t m) {
  std::vector<Level> out(m, Level(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) out[i][i] = 1;
  return out;
}

}  // namespace

GroupRingSeries parse_group_ring_series(const Json& j, const GroupRing& ring, const ContextPtr& context) {
  return parse_series(j, ring, context, [&](const Json& c) { return parse_group_ring_value(c, ring); });
}

ScalarSeries parse_scalar_series(const Json& j, const ScalarRing& ring, const ContextPtr& context) {
  return parse_series(j, ring, context, [&](const Json& c) { return ring.normalize(parse_bigint(c, "coefficient")); });
}

GradedComplex parse_complex(const Json& input, const LoadContext& ctx0, GroupPtr group) {
  const auto [j, ctx] = resolve(input, ctx0);
  const std::string path = input.is_string() ? input.get<std::string>() : "complex";
  check_version(j, path);

  Grading grading;
  const Json& gj = require(j, "grading", path);
  const Json& ranks_j = require(j, "ranks", path);
  if (!ranks_j.is_object()) fail(child(path, "ranks"), "expected an object keyed by degree");
  std::map<int, std::size_t> ranks;
  for (const auto& [key, v] : ranks_j.items()) {
    int deg = 0;
    try {
      std::size_t used = 0;
      deg = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(child(path, "ranks"), "degree key \"" + key + "\" is not an integer");
    }
    ranks[deg] = as_count(v, child(child(path, "ranks"), key));
  }
  if (gj.is_string() && gj.get<std::string>() == "Z") {
    if (ranks.empty()) fail(child(path, "ranks"), "a Z-graded complex needs at least one degree");
    grading = Grading::integers(ranks.begin()->first, ranks.rbegin()->first);
  } else if (gj.is_object() && gj.contains("mod")) {
    const long long k = as_int(gj["mod"], child(child(path, "grading"), "mod"));
    if (k < 2) fail(child(path, "grading"), "modulus must be at least 2");
    grading = Grading::residues(static_cast<int>(k));
    for (const auto& [deg, r] : ranks)
      if (deg < 0 || deg >= k) fail(child(path, "ranks"), "residue " + std::to_string(deg) + " outside [0, " + std::to_string(k) + ")");
  } else {
    fail(child(path, "grading"), "expected \"Z\" or {\"mod\": k}");
  }

  std::uint32_t modulus = 0;
  if (j.contains("coefficients")) {
    const long long m = as_int(j["coefficients"], child(path, "coefficients"));
    if (m != 0 && (m < 2 || !is_prime(static_cast<std::uint64_t>(m))))
      fail(child(path, "coefficients"), "must be 0 (integers) or a prime");
    modulus = static_cast<std::uint32_t>(m);
  }
  if (!group) group = j.contains("group") ? parse_group(j["group"], ctx) : make_group(cyclic_group(1));
  const GroupRing ring{group, modulus};

  const Json empty = Json::object();
  const Json& diffs = j.contains("differentials") ? j["differentials"] : empty;
  if (!diffs.is_object()) fail(child(path, "differentials"), "expected an object keyed by degree");

  std::vector<Level> weights;
  if (j.contains("weights")) {
    weights = parse_weights(j["weights"], child(path, "weights"));
  } else {
    std::optional<std::size_t> m;
    for (const auto& [key, mat] : diffs.items())
      if (mat.is_array())
        for (const Json& row : mat)
          if (row.is_array())
            for (const Json& entry : row) scan_rank(entry, m);
    weights = standard_weights(m.value_or(0));
  }
  ContextPtr context;
  try {
    context = make_context(std::move(weights), std::nullopt);
  } catch (const DomainError& e) {
    fail(child(path, "weights"), e.what());
  }

  ChainComplex<GroupRingMatrix> out;
  out.grading = grading;
  for (std::size_t i = 0; i < grading.count(); ++i) {
    auto it = ranks.find(grading.degree(i));
    out.ranks.push_back(it == ranks.end() ? 0 : it->second);
  }
  std::set<int> used;
  for (std::size_t i = 0; i < grading.count(); ++i) {
    const int deg = grading.degree(i);
    const auto below = grading.below(i);
    const std::size_t rows = out.ranks[i], cols = below ? out.ranks[*below] : 0;
    GroupRingMatrix m(ring, context, rows, cols);
    const std::string key = std::to_string(deg);
    if (diffs.contains(key)) {
      used.insert(deg);
      const std::string dp = child(child(path, "differentials"), key);
      const Json& mat = as_array(diffs[key], dp);
      if (mat.size() != rows) fail(dp, "expected " + std::to_string(rows) + " rows (rank in degree " + key + ")");
      for (std::size_t r = 0; r < rows; ++r) {
        const std::string rp = child(dp, r);
        const Json& row = as_array(mat[r], rp);
        if (row.size() != cols) fail(rp, "expected " + std::to_string(cols) + " entries (rank one degree lower)");
        for (std::size_t c = 0; c < cols; ++c) {
          try {
            m.set(r, c, parse_group_ring_series(row[c], ring, context));
          } catch (const ParseError& e) {
            fail(child(rp, c), e.what());
          }
        }
      }
    }
    out.differentials.push_back(std::move(m));
  }
  for (const auto& [key, v] : diffs.items()) {
    int deg = 0;
    try {
      deg = std::stoi(key);
    } catch (const std::exception&) {
      fail(child(path, "differentials"), "degree key \"" + key + "\" is not an integer");
    }
    if (!used.count(deg)) fail(child(child(path, "differentials"), key), "no module in this degree");
  }
  return out;
}

namespace {

std::optional<MonotonicityClass> parse_class(const std::string& s) {
  if (s == "spherically-CY" || s == "spherically-calabi-yau" || s == "calabi-yau") return MonotonicityClass::SphericallyCalabiYau;
  if (s == "weakly-monotone" || s == "weakly-monotone-N-positive") return MonotonicityClass::WeaklyMonotone;
  if (s == "general") return MonotonicityClass::General;
  return std::nullopt;
}

}  // namespace

ManifoldDescriptor parse_descriptor(const Json& input, const LoadContext& ctx0, std::size_t coset_budget) {
  std::vector<std::string> errors;
  auto guard = [&](const std::function<void()>& f) {
    try {
      f();
    } catch (const ParseError& e) {
      errors.push_back(e.what());
    } catch (const DomainError& e) {
      errors.push_back(e.what());
    }
  };

  Json j;
  LoadContext ctx;
  std::tie(j, ctx) = resolve(input, ctx0);
  const std::string path = "descriptor";
  if (!j.is_object()) fail(path, "expected an object");
  ManifoldDescriptor d;

  static const std::set<std::string> known = {"schema_version", "half_dim", "minimal_chern", "class", "pi1",
                                              "pi1_infinite", "cover", "universal_cover", "complex", "betti", "name"};
  for (const auto& [key, v] : j.items())
    if (!known.count(key)) errors.push_back(child(path, key) + ": unknown field");

  guard([&] { check_version(j, path); });
  guard([&] {
    const long long n = as_int(require(j, "half_dim", path), child(path, "half_dim"));
    if (n < 1) fail(child(path, "half_dim"), "must be at least 1");
    d.half_dim = static_cast<int>(n);
  });
  guard([&] {
    const long long nc = as_int(require(j, "minimal_chern", path), child(path, "minimal_chern"));
    if (nc < 0) fail(child(path, "minimal_chern"), "must be non-negative");
    d.minimal_chern = static_cast<int>(nc);
  });
  guard([&] {
    const std::string& s = as_string(require(j, "class", path), child(path, "class"));
    auto c = parse_class(s);
    if (!c) fail(child(path, "class"), "unknown class \"" + s + "\" (spherically-CY, weakly-monotone, general)");
    d.monotonicity = *c;
  });
  guard([&] {
    if (j.contains("pi1")) d.pi1 = parse_presentation(j["pi1"], ctx);
  });
  guard([&] {
    if (j.contains("pi1_infinite")) d.pi1_infinite = as_bool(j["pi1_infinite"], child(path, "pi1_infinite"));
  });
  guard([&] {
    if (j.contains("universal_cover")) d.universal_cover = as_bool(j["universal_cover"], child(path, "universal_cover"));
  });
  GroupPtr cover_group;
  guard([&] {
    if (!j.contains("cover")) return;
    const std::string cp = child(path, "cover");
    const Json& c = j["cover"];
    if (!c.is_object()) fail(cp, "expected an object");
    cover_group = parse_group(require(c, "group", cp), ctx);
    const Json& imgs = as_array(require(c, "generator_images", cp), child(cp, "generator_images"));
    if (!d.pi1) fail(cp, "a cover needs the pi1 presentation");
    std::vector<Element> images;
    std::size_t i = 0;
    for (const Json& x : imgs) images.push_back(element_ref(x, *cover_group, child(child(cp, "generator_images"), i++)));
    d.cover = make_homomorphism(*d.pi1, cover_group, std::move(images));
  });
  guard([&] {
    if (!j.contains("complex")) return;
    if (j.contains("cover") && !cover_group) return;  // the cover error is already recorded
    d.complex = parse_complex(j["complex"], ctx, cover_group);
  });
  guard([&] {
    if (!j.contains("betti")) return;
    const std::string bp = child(path, "betti");
    const Json& b = j["betti"];
    ClassicalBetti cb;
    if (b.is_array()) {
      for (std::size_t i = 0; i < b.size(); ++i) cb.values.push_back(as_count(b[i], child(bp, i)));
    } else {
      if (b.contains("field")) {
        const long long f = as_int(b["field"], child(bp, "field"));
        if (f < 0) fail(child(bp, "field"), "must be 0 or a prime");
        cb.field = static_cast<std::uint32_t>(f);
      }
      const Json& vals = as_array(require(b, "values", bp), child(bp, "values"));
      for (std::size_t i = 0; i < vals.size(); ++i) cb.values.push_back(as_count(vals[i], child(child(bp, "values"), i)));
    }
    d.betti = cb;
  });
  if (!errors.empty()) {
    std::string msg = "invalid descriptor (" + std::to_string(errors.size()) + " error" + (errors.size() == 1 ? "" : "s") + "):";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ParseError(msg);
  }
  const auto violations = validate_descriptor(d, coset_budget);
  if (!violations.empty()) {
    std::string msg = "invalid descriptor (" + std::to_string(violations.size()) + " violation" +
                      (violations.size() == 1 ? "" : "s") + "):";
    for (const auto& e : violations) msg += "\n  - " + e;
    throw DomainError(msg);
  }
  return d;
}

NovikovExpression parse_novikov_expression(const Json& input, const LoadContext& ctx0, long long depth) {
  const auto [j, ctx] = resolve(input, ctx0);
  const std::string path = input.is_string() ? input.get<std::string>() : "expression";
  check_version(j, path);
  NovikovExpression e;
  e.operation = as_string(require(j, "operation", path), child(path, "operation"));
  static const std::set<std::string> ops = {"mul", "add", "sub", "invert", "augment"};
  if (!ops.count(e.operation)) fail(child(path, "operation"), "unknown operation \"" + e.operation + "\"");

  std::uint32_t modulus = 0;
  if (j.contains("ring")) {
    const Json& r = j["ring"];
    if (r.is_string() && r.get<std::string>() == "Z") modulus = 0;
    else if (r.is_object() && r.contains("mod")) {
      const long long m = as_int(r["mod"], child(child(path, "ring"), "mod"));
      if (m < 2 || !is_prime(static_cast<std::uint64_t>(m))) fail(child(path, "ring"), "modulus must be prime");
      modulus = static_cast<std::uint32_t>(m);
    } else {
      fail(child(path, "ring"), "expected \"Z\" or {\"mod\": p}");
    }
  }
  const Json& operands = as_array(require(j, "operands", path), child(path, "operands"));
  const std::vector<Level> weights =
      j.contains("weights") ? parse_weights(j["weights"], child(path, "weights")) : standard_weights(1);
  std::optional<Rational> cutoff;
  if (j.contains("cutoff") && !j["cutoff"].is_null()) {
    try {
      cutoff = parse_rational(j["cutoff"]);
    } catch (const ParseError& err) {
      fail(child(path, "cutoff"), err.what());
    }
  }
  const bool group_ring = j.contains("group");
  if (e.operation == "invert" && group_ring) fail(child(path, "operation"), "invert is available for scalar series only");
  if (e.operation == "augment" && !group_ring) fail(child(path, "operation"), "augment needs a group ring (\"group\")");
  const std::size_t arity = operands.size();
  if ((e.operation == "invert" || e.operation == "augment") && arity != 1) fail(child(path, "operands"), "expected one operand");
  if (e.operation == "sub" && arity != 2) fail(child(path, "operands"), "expected two operands");
  if (arity == 0) fail(child(path, "operands"), "expected at least one operand");

  ContextPtr exact;
  try {
    exact = make_context(weights, std::nullopt);
  } catch (const DomainError& err) {
    fail(child(path, "weights"), err.what());
  }
  auto with_operands = [&](const ContextPtr& c) {
    e.context = c;
    e.scalar_operands.clear();
    e.group_operands.clear();
    for (std::size_t i = 0; i < arity; ++i) {
      try {
        if (group_ring) e.group_operands.push_back(parse_group_ring_series(operands[i], *e.group_ring, c));
        else e.scalar_operands.push_back(parse_scalar_series(operands[i], *e.scalar_ring, c));
      } catch (const ParseError& err) {
        fail(child(child(path, "operands"), i), err.what());
      }
    }
  };
  if (group_ring) e.group_ring = GroupRing{parse_group(j["group"], ctx), modulus};
  else e.scalar_ring = ScalarRing{modulus};
  with_operands(exact);
  if (!cutoff && e.operation == "invert") {
    const auto lead = e.scalar_operands.front().leading_exponent();
    if (lead) cutoff = -exact->primary_level(*lead) - depth;
  }
  if (cutoff) with_operands(make_context(weights, cutoff));
  return e;
}

NovikovResult evaluate(const NovikovExpression& e) {
  NovikovResult out;
  if (e.scalar_ring) {
    const auto& xs = e.scalar_operands;
    ScalarSeries acc = xs.front();
    if (e.operation == "invert") acc = nov_invert(acc);
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (e.operation == "mul") acc = nov_mul(acc, xs[i]);
      else if (e.operation == "add") acc = acc + xs[i];
      else acc = acc - xs[i];
    }
    out.scalar = acc;
    return out;
  }
  const auto& xs = e.group_operands;
  if (e.operation == "augment") {
    out.scalar = augment(xs.front());
    return out;
  }
  GroupRingSeries acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (e.operation == "mul") acc = nov_mul(acc, xs[i]);
    else if (e.operation == "add") acc = acc + xs[i];
    else acc = acc - xs[i];
  }
  out.group = acc;
  return out;
}

std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

Json series_to_json(const ScalarSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.ordered_terms()) terms.push_back(Json::array({bigint_json(c), e}));
  return terms;
}

Json series_to_json(const GroupRingSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.ordered_terms()) {
    Json coeff = Json::array();
    for (const auto& [g, k] : c) coeff.push_back(Json::array({bigint_json(k), s.ring().group->label(g)}));
    terms.push_back(Json::array({coeff, e}));
  }
  return terms;
}

Json delta_to_json(const DeltaBreakdown& d) {
  Json j;
  j["delta"] = d.delta;
  j["A"] = d.a_value ? Json(*d.a_value) : Json(nullptr);
  j["B"] = d.b_value;
  Json b1 = Json::object();
  for (const auto& [p, b] : d.b1_trivial) b1[std::to_string(p)] = b;
  j["b1_trivial"] = b1;
  Json w = Json::array();
  for (const auto& x : d.witnesses)
    w.push_back({{"prime", x.prime}, {"rep", x.rep_id}, {"dim", x.dim}, {"b1", x.b1}, {"value", x.value}});
  j["witnesses"] = w;
  return j;
}

std::string delta_to_table(const DeltaBreakdown& d) {
  std::ostringstream os;
  os << "delta = " << d.delta << "\n";
  os << "  A = " << (d.a_value ? std::to_string(*d.a_value) : std::string("none")) << "  (max ceil(b1/dim)+1 over nontrivial irreducibles)\n";
  os << "  B = " << d.b_value << "  (max b1 with trivial coefficients)\n";
  for (const auto& [p, b] : d.b1_trivial) os << "  F" << p << " trivial: b1 = " << b << "\n";
  for (const auto& x : d.witnesses)
    os << "  " << x.rep_id << " dim " << x.dim << ": b1 = " << x.b1 << " -> " << x.value << "\n";
  return os.str();
}

namespace {

Json bound_to_json(const Bound& b) {
  Json w;
  w["detail"] = b.witness;
  if (b.beta) w["beta"] = rational_to_string(*b.beta);
  return {{"bound", b.value}, {"rule", b.rule}, {"witness", w}};
}

Bound bound_from_json(const Json& j, const std::string& path) {
  Bound b;
  b.value = as_int(require(j, "bound", path), child(path, "bound"));
  b.rule = as_string(require(j, "rule", path), child(path, "rule"));
  if (j.contains("witness")) {
    const Json& w = j["witness"];
    if (w.contains("detail")) b.witness = as_string(w["detail"], child(path, "witness"));
    if (w.contains("beta")) b.beta = parse_rational(w["beta"]);
  }
  return b;
}

}  // namespace

Json report_to_json(const BoundsReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["half_dim"] = r.half_dim;
  j["minimal_chern"] = r.minimal_chern;
  j["class"] = to_string(r.monotonicity);
  Json per = Json::object();
  for (const auto& [k, b] : r.per_index) per[std::to_string(k)] = bound_to_json(b);
  j["per_index"] = per;
  Json joint = Json::array();
  for (const auto& jb : r.joint) joint.push_back({{"indices", jb.keys}, {"bound", jb.value}, {"rule", jb.rule}});
  j["joint"] = joint;
  j["total"] = bound_to_json(r.total);
  if (r.group) {
    const GroupInvariants& g = *r.group;
    j["group"] = {{"order", g.order},   {"cyclic", g.cyclic}, {"solvable", g.solvable}, {"simple", g.simple},
                  {"perfect", g.perfect}, {"d", g.d},        {"delta", delta_to_json(g.delta)}};
  } else {
    j["group"] = nullptr;
  }
  Json betti = Json::array();
  for (const auto& e : r.betti) {
    Json vals = Json::object();
    for (const auto& [deg, b] : e.betti) vals[std::to_string(deg)] = b;
    betti.push_back({{"id", e.id}, {"field", e.field}, {"dim", e.dim}, {"trivial", e.trivial}, {"values", vals}});
  }
  j["betti"] = betti;
  j["notes"] = r.notes;
  return j;
}

BoundsReport report_from_json(const Json& j) {
  const std::string path = "report";
  check_version(j, path);
  BoundsReport r;
  r.half_dim = static_cast<int>(as_int(require(j, "half_dim", path), child(path, "half_dim")));
  r.minimal_chern = static_cast<int>(as_int(require(j, "minimal_chern", path), child(path, "minimal_chern")));
  const auto c = parse_class(as_string(require(j, "class", path), child(path, "class")));
  if (!c) fail(child(path, "class"), "unknown class");
  r.monotonicity = *c;
  const Json& per = require(j, "per_index", path);
  if (!per.is_object()) fail(child(path, "per_index"), "expected an object");
  for (const auto& [k, v] : per.items()) r.per_index[std::stoll(k)] = bound_from_json(v, child(child(path, "per_index"), k));
  std::size_t i = 0;
  for (const Json& jb : as_array(require(j, "joint", path), child(path, "joint"))) {
    const std::string jp = child(child(path, "joint"), i++);
    JointBound b;
    for (const Json& k : as_array(require(jb, "indices", jp), child(jp, "indices"))) b.keys.push_back(as_int(k, jp));
    b.value = as_int(require(jb, "bound", jp), child(jp, "bound"));
    b.rule = as_string(require(jb, "rule", jp), child(jp, "rule"));
    r.joint.push_back(std::move(b));
  }
  r.total = bound_from_json(require(j, "total", path), child(path, "total"));
  if (j.contains("group") && !j["group"].is_null()) {
    const Json& g = j["group"];
    const std::string gp = child(path, "group");
    GroupInvariants gi;
    gi.order = as_count(require(g, "order", gp), gp);
    gi.cyclic = as_bool(require(g, "cyclic", gp), gp);
    gi.solvable = as_bool(require(g, "solvable", gp), gp);
    gi.simple = as_bool(require(g, "simple", gp), gp);
    gi.perfect = as_bool(require(g, "perfect", gp), gp);
    gi.d = as_count(require(g, "d", gp), gp);
    const Json& dj = require(g, "delta", gp);
    gi.delta.delta = as_count(require(dj, "delta", gp), gp);
    if (!require(dj, "A", gp).is_null()) gi.delta.a_value = as_count(dj["A"], gp);
    gi.delta.b_value = as_count(require(dj, "B", gp), gp);
    for (const auto& [p, b] : require(dj, "b1_trivial", gp).items())
      gi.delta.b1_trivial[static_cast<std::uint32_t>(std::stoul(p))] = as_count(b, gp);
    for (const Json& w : as_array(require(dj, "witnesses", gp), gp))
      gi.delta.witnesses.push_back(DeltaWitness{static_cast<std::uint32_t>(as_count(require(w, "prime", gp), gp)),
                                                as_string(require(w, "rep", gp), gp), as_count(require(w, "dim", gp), gp),
                                                as_count(require(w, "b1", gp), gp), as_count(require(w, "value", gp), gp)});
    r.group = gi;
  }
  for (const Json& e : as_array(require(j, "betti", path), child(path, "betti"))) {
    BettiEntry b;
    b.id = as_string(require(e, "id", path), path);
    b.field = static_cast<std::uint32_t>(as_count(require(e, "field", path), path));
    b.dim = as_count(require(e, "dim", path), path);
    b.trivial = as_bool(require(e, "trivial", path), path);
    for (const auto& [deg, v] : require(e, "values", path).items()) b.betti[std::stoi(deg)] = as_count(v, path);
    r.betti.push_back(std::move(b));
  }
  r.notes = string_list(require(j, "notes", path), child(path, "notes"));
  return r;
}

std::string report_to_table(const BoundsReport& r) {
  std::ostringstream os;
  os << "class " << to_string(r.monotonicity) << ", n = " << r.half_dim << ", N = " << r.minimal_chern << "\n";
  if (r.group) {
    const GroupInvariants& g = *r.group;
    os << "G: order " << g.order << ", d = " << g.d << ", delta = " << g.delta.delta << (g.cyclic ? ", cyclic" : "")
       << (g.solvable ? ", solvable" : "") << (g.simple ? ", simple" : "") << (g.perfect ? ", perfect" : "") << "\n";
  }
  os << std::left << std::setw(8) << "index" << std::setw(8) << "p_j >=" << std::setw(24) << "rule"
     << "witness\n";
  for (const auto& [k, b] : r.per_index)
    os << std::left << std::setw(8) << k << std::setw(8) << b.value << std::setw(24) << b.rule << b.witness << "\n";
  for (const auto& jb : r.joint) {
    os << "joint: ";
    for (std::size_t i = 0; i < jb.keys.size(); ++i) os << (i ? " + " : "") << "p_" << jb.keys[i];
    os << " >= " << jb.value << "  [" << jb.rule << "]\n";
  }
  os << "total >= " << r.total.value << "  [" << r.total.rule << "] " << r.total.witness << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

}  // namespace orbitbound
