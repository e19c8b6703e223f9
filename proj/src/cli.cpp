#include "orbitbound/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <sstream>

#include "orbitbound/bounds.hpp"
#include "orbitbound/complex.hpp"
#include "orbitbound/errors.hpp"
#include "orbitbound/io.hpp"
#include "orbitbound/local_coefficients.hpp"

namespace orbitbound {

namespace {

struct RunConfig {
  std::string input;
  std::string rep_file;
  std::vector<std::uint32_t> primes;
  std::uint64_t seed = 0;
  std::size_t max_order = 2000;
  std::size_t coset_budget = 1000000;
  long long depth = 40;
  std::size_t rep_dim_cap = 0;
  int mod = 0;
  std::string format = "table";
};

LoadContext load_context(const RunConfig& cfg) {
  LoadContext ctx;
  ctx.base_dir = std::filesystem::path(cfg.input).parent_path();
  if (ctx.base_dir.empty()) ctx.base_dir = ".";
  ctx.limits.max_order = cfg.max_order;
  return ctx;
}

Json load_input(const RunConfig& cfg) { return read_json_file(cfg.input); }

std::uint32_t single_prime(const RunConfig& cfg) {
  if (cfg.primes.size() != 1) throw ParseError("exactly one --prime is required");
  if (!is_prime(cfg.primes.front())) throw DomainError(std::to_string(cfg.primes.front()) + " is not prime");
  return cfg.primes.front();
}

Json matrix_json(const PrimeFieldMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_text(const PrimeFieldMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + std::to_string(m(i, j));
  }
  return s + "]";
}

void emit(const RunConfig& cfg, std::ostream& out, const Json& j, const std::string& table) {
  if (cfg.format == "json") out << j.dump(2) << "\n";
  else out << table;
}

void cmd_delta(const RunConfig& cfg, std::ostream& out) {
  const GroupPtr g = parse_group(load_input(cfg), load_context(cfg));
  const DeltaBreakdown d = delta_of_group(g, cfg.seed);
  Json j = delta_to_json(d);
  j["order"] = g->order();
  emit(cfg, out, j, delta_to_table(d));
}

void cmd_dgen(const RunConfig& cfg, std::ostream& out) {
  const GroupPtr g = parse_group(load_input(cfg), load_context(cfg));
  const std::size_t d = d_of_group(*g);
  emit(cfg, out, Json{{"order", g->order()}, {"d", d}}, "d = " + std::to_string(d) + "\n");
}

void cmd_irreps(const RunConfig& cfg, std::ostream& out) {
  const GroupPtr g = parse_group(load_input(cfg), load_context(cfg));
  const std::uint32_t p = single_prime(cfg);
  const RegularDecomposition dec = decompose_regular(g, p, cfg.seed);
  Json list = Json::array();
  std::ostringstream table;
  table << dec.irreducibles.size() << " irreducible(s) over F" << p << " for a group of order " << g->order() << "\n";
  for (std::size_t i = 0; i < dec.irreducibles.size(); ++i) {
    const Representation& rho = dec.irreducibles[i];
    const std::string id = "F" + std::to_string(p) + "#" + std::to_string(i);
    Json images = Json::array();
    for (const auto& m : rho.generator_images) images.push_back(matrix_json(m));
    list.push_back({{"id", id},
                    {"dim", rho.dim},
                    {"trivial", is_trivial(rho)},
                    {"multiplicity", dec.multiplicities[i]},
                    {"generator_images", images}});
    table << id << "  dim " << rho.dim << "  multiplicity " << dec.multiplicities[i] << (is_trivial(rho) ? "  trivial" : "")
          << "\n";
    for (std::size_t k = 0; k < rho.generator_images.size(); ++k)
      table << "  " << g->generator_names()[k] << " -> " << matrix_text(rho.generator_images[k]) << "\n";
  }
  emit(cfg, out, Json{{"prime", p}, {"order", g->order()}, {"irreducibles", list}}, table.str());
}

void cmd_betti(const RunConfig& cfg, std::ostream& out) {
  const LoadContext ctx = load_context(cfg);
  const Json pj = load_input(cfg);
  const Presentation pres = parse_presentation(pj, ctx);
  std::optional<Representation> rho;
  std::optional<GroupHomomorphism> hom;
  if (!cfg.rep_file.empty()) {
    LoadContext rctx = ctx;
    rctx.base_dir = std::filesystem::path(cfg.rep_file).parent_path();
    if (rctx.base_dir.empty()) rctx.base_dir = ".";
    const Json rj = read_json_file(cfg.rep_file);
    if (!rj.is_object() || !rj.contains("group")) throw ParseError(cfg.rep_file + ": missing field \"group\"");
    const GroupPtr g = parse_group(rj["group"], rctx);
    rho = parse_representation(rj, g, rctx);
    if (!cfg.primes.empty() && single_prime(cfg) != rho->prime)
      throw DomainError("--prime " + std::to_string(single_prime(cfg)) + " differs from the representation prime " +
                        std::to_string(rho->prime));
    std::vector<Element> images;
    if (pj.contains("images")) {
      for (const Json& x : pj["images"]) {
        if (!x.is_string()) throw ParseError(cfg.input + ": images must be element labels or words");
        auto e = g->find(x.get<std::string>());
        if (!e) throw ParseError(cfg.input + ": unknown group element \"" + x.get<std::string>() + "\"");
        images.push_back(*e);
      }
    } else {
      if (pres.generator_count() != g->generators().size())
        throw DomainError("presentation and group have different generator counts; give \"images\"");
      images = g->generators();
    }
    hom = make_homomorphism(pres, g, std::move(images));
  } else {
    const std::uint32_t p = single_prime(cfg);
    const GroupPtr trivial = make_group(cyclic_group(1));
    hom = make_homomorphism(pres, trivial, std::vector<Element>(pres.generator_count(), trivial->identity()));
    rho = trivial_representation(trivial, p);
  }
  const std::size_t b0 = local_betti(pres, *hom, *rho, 0);
  const std::size_t b1 = local_betti(pres, *hom, *rho, 1);
  emit(cfg, out, Json{{"prime", rho->prime}, {"dim", rho->dim}, {"b0", b0}, {"b1", b1}},
       "b0 = " + std::to_string(b0) + ", b1 = " + std::to_string(b1) + "\n");
}

void cmd_fold(const RunConfig& cfg, std::ostream& out) {
  if (cfg.mod < 2) throw ParseError("--mod k with k >= 2 is required");
  const GradedComplex c = parse_complex(load_input(cfg), load_context(cfg));
  const GradedComplex f = fold(c, cfg.mod);
  const bool ok = check_complex(f);
  std::ostringstream table;
  table << "residue  rank\n";
  for (std::size_t i = 0; i < f.ranks.size(); ++i) table << std::left << std::setw(9) << i << f.ranks[i] << "\n";
  table << "differentials compose to zero: " << (ok ? "yes" : "no") << "\n";
  emit(cfg, out, Json{{"mod", cfg.mod}, {"ranks", f.ranks}, {"is_complex", ok}}, table.str());
}

void cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const ManifoldDescriptor d = parse_descriptor(load_input(cfg), load_context(cfg), cfg.coset_budget);
  BoundsConfig bc;
  bc.primes = cfg.primes;
  bc.seed = cfg.seed;
  bc.rep_dim_cap = cfg.rep_dim_cap;
  bc.coset_budget = cfg.coset_budget;
  const BoundsReport r = orbit_report(d, bc);
  emit(cfg, out, report_to_json(r), report_to_table(r));
}

void cmd_novikov(const RunConfig& cfg, std::ostream& out) {
  const NovikovExpression e = parse_novikov_expression(load_input(cfg), load_context(cfg), cfg.depth);
  const NovikovResult r = evaluate(e);
  const std::string text = r.scalar ? r.scalar->to_string() : r.group->to_string();
  Json j{{"operation", e.operation}, {"result", r.scalar ? series_to_json(*r.scalar) : series_to_json(*r.group)},
         {"text", text}};
  if (e.context->cutoff()) j["cutoff"] = rational_to_string(*e.context->cutoff());
  else j["cutoff"] = nullptr;
  emit(cfg, out, j, "result = " + text + "\n");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"orbitbound: lower bounds on periodic orbits from group data"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", cfg.seed, "seed for randomized algorithms");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--max-order", cfg.max_order, "largest group order accepted")->check(CLI::PositiveNumber);
  app.add_option("--coset-budget", cfg.coset_budget, "coset table size limit")->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "default truncation depth for novikov invert")->check(CLI::PositiveNumber);
  app.add_option("--rep-dim-cap", cfg.rep_dim_cap, "skip irreducibles above this dimension (0: none)");
  app.add_option("--prime", cfg.primes, "prime(s); default all primes dividing |G|");
  app.fallthrough();

  struct Sub {
    const char* name;
    const char* help;
    void (*run)(const RunConfig&, std::ostream&);
  };
  const Sub subs[] = {{"delta", "delta(G) with its breakdown", cmd_delta},
                      {"dgen", "minimal number of generators d(G)", cmd_dgen},
                      {"irreps", "irreducible F_p-representations", cmd_irreps},
                      {"betti", "b0, b1 of a presentation with local coefficients", cmd_betti},
                      {"fold", "ranks of the Z/k fold of a complex", cmd_fold},
                      {"bounds", "orbit-count lower bounds for a manifold descriptor", cmd_bounds},
                      {"novikov", "evaluate a Novikov-ring expression", cmd_novikov}};
  std::map<CLI::App*, const Sub*> by_app;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("file", cfg.input, "input JSON file")->required();
    if (std::string(s.name) == "betti") sub->add_option("--rep", cfg.rep_file, "representation file");
    if (std::string(s.name) == "fold") sub->add_option("--mod", cfg.mod, "fold modulus k")->required();
    by_app[sub] = &s;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }
  for (std::uint32_t p : cfg.primes)
    if (!is_prime(p)) {
      err << "error: --prime " << p << " is not prime\n";
      return 2;
    }
  const Sub* chosen = by_app.at(app.get_subcommands().front());
  try {
    chosen->run(cfg, out);
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace orbitbound
