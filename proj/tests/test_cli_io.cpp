#include <doctest.h>

#include <sstream>

#include "orbitbound/cli.hpp"
#include "orbitbound/errors.hpp"
#include "orbitbound/io.hpp"

using namespace orbitbound;

namespace {

const std::string kData = TEST_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

LoadContext here() { return LoadContext{kData, {}}; }

}  // namespace

TEST_CASE("delta of the Klein four-group") {
  const Run r = run({"delta", data("klein4.json")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "delta = 2"));
  const Run j = run({"delta", data("klein4.json"), "--format", "json"});
  REQUIRE(j.code == 0);
  CHECK(parse_json_text(j.out).at("delta") == 2);
}

TEST_CASE("d of A5") {
  const Run r = run({"dgen", data("a5.json")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "d = 2"));
}

TEST_CASE("betti of S3 with trivial and sign coefficients") {
  const Run r = run({"betti", data("s3.json"), "--prime", "3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "b0 = 1, b1 = 0"));
  const Run s = run({"betti", data("s3.json"), "--rep", data("s3_sign.json")});
  CHECK(s.code == 0);
  CHECK(contains(s.out, "b0 = 0, b1 = 1"));
}

TEST_CASE("irreps table") {
  const Run r = run({"irreps", data("klein4.json"), "--prime", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const Json j = parse_json_text(r.out);
  REQUIRE(j.contains("irreducibles"));
  CHECK(j.at("irreducibles").size() == 4);
}

TEST_CASE("fold of the circle") {
  const Run r = run({"fold", data("circle.json"), "--mod", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "differentials compose to zero: yes"));
  CHECK(run({"fold", data("circle.json")}).code == 2);
}

TEST_CASE("novikov evaluation") {
  const Run r = run({"novikov", data("novikov_invert.json")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "1 + 4*t^-1 + t^-2 + 4*t^-3 + t^-4 + 4*t^-5"));
  const Run g = run({"novikov", data("novikov_group.json")});
  CHECK(g.code == 0);
  CHECK(contains(g.out, "(2*a + 2*b)*t + (1 + ab)*t^-1"));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"delta", data("missing.json")}).code == 2);
  CHECK(run({"delta", data("klein4.json"), "--format", "xml"}).code == 2);
  const Run bad = run({"bounds", data("bad_cy_monotone.json")});
  CHECK(bad.code == 1);
  CHECK(contains(bad.err, "minimal_chern = 0"));
}

TEST_CASE("JSON syntax errors report line and column") {
  try {
    parse_json_text("{\n  \"a\": 1,\n  \"b\": }\n", "broken.json");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(contains(e.what(), "broken.json:3:"));
  }
}

TEST_CASE("descriptor of the torus") {
  const ManifoldDescriptor d = parse_descriptor(read_json_file(data("torus_v4.json")), here());
  CHECK(d.half_dim == 1);
  CHECK(d.minimal_chern == 0);
  CHECK(d.monotonicity == MonotonicityClass::SphericallyCalabiYau);
  REQUIRE(d.cover.has_value());
  CHECK(d.cover->target->order() == 4);
  const Run r = run({"bounds", data("torus_v4.json")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "t:CY-index1(2a)"));
}

TEST_CASE("general class with N = 3 is accepted") {
  const ManifoldDescriptor d = parse_descriptor(read_json_file(data("general_infinite.json")), here());
  CHECK(d.minimal_chern == 3);
  CHECK(d.monotonicity == MonotonicityClass::General);
  const Run r = run({"bounds", data("general_infinite.json"), "--format", "json"});
  REQUIRE(r.code == 0);
  const Json j = parse_json_text(r.out);
  CHECK(j.at("per_index").at("0").at("rule") == "t:inf-gen-case");
}

TEST_CASE("schema errors are all listed") {
  const Json j = parse_json_text(R"({"half_dim": "two", "minimal_chern": -1, "class": "kaehler", "colour": 3})");
  try {
    parse_descriptor(j, here());
    FAIL("no error");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(contains(msg, "half_dim"));
    CHECK(contains(msg, "class"));
    CHECK(contains(msg, "colour"));
  }
  const Json cross = parse_json_text(R"({"half_dim": 1, "minimal_chern": 0, "class": "general",
    "pi1": {"generators": ["a"], "relators": ["a^3"]}, "pi1_infinite": true})");
  try {
    parse_descriptor(cross, here());
    FAIL("no error");
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    CHECK(contains(msg, "minimal_chern = 0"));
    CHECK(contains(msg, "pi1_infinite"));
  }
}

TEST_CASE("bounds reports round trip through JSON") {
  for (const char* name : {"torus_v4.json", "a5_universal.json", "monotone_v4.json", "general_infinite.json"}) {
    CAPTURE(name);
    const Run r = run({"bounds", data(name), "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = parse_json_text(r.out);
    CHECK(j.at("schema_version") == kSchemaVersion);
    CHECK(report_to_json(report_from_json(j)) == j);
  }
}

TEST_CASE("reports on the example descriptors") {
  const Json a5 = parse_json_text(run({"bounds", data("a5_universal.json"), "--format", "json"}).out);
  CHECK(a5.at("per_index").at("0").at("rule") == "t:CY-index2(2)");
  CHECK(a5.at("per_index").at("0").at("bound") == 2);
  CHECK(a5.at("per_index").at("-1").at("rule") == "t:CY-index1(2a)");
  const Json mono = parse_json_text(run({"bounds", data("monotone_v4.json"), "--format", "json"}).out);
  CHECK(mono.at("per_index").at("0").at("rule") == "t:monoton-bigChern(1)");
  CHECK(mono.at("per_index").at("0").at("bound") == 2);
}

TEST_CASE("same seed, same bytes") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"delta", data("a5.json")},
           {"irreps", data("a5.json"), "--prime", "2"},
           {"bounds", data("a5_universal.json")},
           {"bounds", data("monotone_v4.json")},
           {"novikov", data("novikov_group.json")}}) {
    for (const char* fmt : {"json", "table"}) {
      auto full = args;
      full.insert(full.end(), {"--seed", "7", "--format", fmt});
      const Run a = run(full), b = run(full);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
  }
}
