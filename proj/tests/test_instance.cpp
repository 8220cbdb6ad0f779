#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "relfix/instance.hpp"

using namespace relfix;

namespace {

const std::string kMinimal = R"({
  "space": {"intervals": [{"lo": 0, "hi": 1, "lo_closed": true, "hi_closed": true}]},
  "metric": {"kind": "usual"},
  "relation": {"kind": "universal"},
  "map": {"pieces": [{"domain": {"lo": 0, "hi": 1, "lo_closed": true, "hi_closed": true},
                      "slope": 0.5, "intercept": 0}]},
  "condition": {"tag": "LinearBanach", "k": 0.5}
})";

std::string patched(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

} // namespace

TEST_CASE("the shipped documents are the built-in instances") {
  for (const std::string& id : builtin_ids()) {
    InstanceDocument shipped = load_instance_file(data_directory() + "/example" + id + ".json");
    InstanceDocument built = builtin_instance(id);
    CHECK(serialize_instance(shipped) == serialize_instance(built));
  }
  CHECK(builtin_ids() == std::vector<std::string>{"4.1", "4.2", "4.3"});
  CHECK_THROWS_AS(builtin_instance("9.9"), std::invalid_argument);
}

TEST_CASE("serialization round-trips every built-in document") {
  for (const std::string& id : builtin_ids()) {
    InstanceDocument doc = builtin_instance(id);
    std::string text = serialize_instance(doc);
    InstanceDocument back = parse_instance(text, "roundtrip");
    CHECK(serialize_instance(back) == text);
    CHECK(back.name == doc.name);
    CHECK(back.theorems == doc.theorems);
    CHECK(back.solver.x0 == doc.solver.x0);
    CHECK(back.instance.condition == doc.instance.condition);
  }

  CHECK(serialize_instance(builtin_instance("4.1")).find("subspace_y") != std::string::npos);
  CHECK(serialize_instance(builtin_instance("4.3")).find("subspace_y") == std::string::npos);
}

TEST_CASE("a minimal document defaults the optional sections") {
  InstanceDocument doc = parse_instance(kMinimal, "minimal");
  CHECK(doc.name == "minimal");
  CHECK(doc.instance.subspace == doc.instance.space);
  CHECK(doc.theorems.empty());
  CHECK_FALSE(doc.solver.x0.has_value());
  CHECK(doc.solver.max_iters == kDefaultMaxIters);
  CHECK(doc.solver.tol == kDefaultTol);
  CHECK(doc.budgets.pair_budget == kDefaultPairBudget);
  CHECK(doc.budgets.seed == 1);
}

TEST_CASE("unknown keys are rejected with their location") {
  try {
    parse_instance(patched(kMinimal, "\"metric\"", "\"metrics\""), "bad");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown key 'metrics'") != std::string::npos);
  }

  try {
    parse_instance(patched(kMinimal, "\"kind\": \"universal\"",
                           "\"kind\": \"universal\", \"extra\": 1"),
                   "bad");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown key 'extra'") != std::string::npos);
    CHECK(e.where().find("/relation") != std::string::npos);
  }
}

TEST_CASE("parameter ranges surface the factory message at the document path") {
  try {
    parse_instance(patched(kMinimal, "\"k\": 0.5", "\"k\": 1.0"), "bad");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.message() == "k must lie in [0,1)");
    CHECK(e.where().find("/condition") != std::string::npos);
  }
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_instance("{\n  \"name\": \"x\",\n  \"space\": oops\n}", "syntax");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 0);
    CHECK(e.where().find("syntax") != std::string::npos);
  }
}

TEST_CASE("semantic validation rejects malformed geometry and maps") {
  CHECK_THROWS_AS(parse_instance(patched(kMinimal, "\"hi\": 1, \"lo_closed\": true",
                                         "\"hi\": -1, \"lo_closed\": true"),
                                 "bad"),
                  ParseError);

  CHECK_THROWS_AS(parse_instance(patched(kMinimal, "\"slope\": 0.5", "\"slope\": 3.0"), "bad"),
                  ParseError);

  CHECK_THROWS_AS(parse_instance(patched(kMinimal, "\"tag\": \"LinearBanach\", \"k\": 0.5",
                                         "\"tag\": \"PhiM\""),
                                 "bad"),
                  ParseError);

  CHECK_THROWS_AS(
      parse_instance(patched(kMinimal, "\"kind\": \"universal\"", "\"kind\": \"sideways\""),
                     "bad"),
      ParseError);
}

TEST_CASE("the parser is total over arbitrary input text") {
  const char* nasty[] = {
      "",
      "   ",
      "null",
      "42",
      "\"just a string\"",
      "[1, 2, 3]",
      "{}",
      "{\"name\": 3}",
      "{\"name\": \"x\", \"space\": {}}",
      "{\"space\": {\"points\": []}}",
      "{\"space\": {\"points\": [0, 0]}}",
      "{unquoted: true}",
      "\xff\xfe garbage bytes \x01",
      "{\"name\": \"x\", \"space\": {\"intervals\": [{\"lo\": 1e400}]}}",
  };
  for (const char* text : nasty) CHECK_THROWS_AS(parse_instance(text, "nasty"), ParseError);

  std::string deep;
  for (int i = 0; i < 2000; ++i) deep += "[";
  CHECK_THROWS_AS(parse_instance(deep, "deep"), ParseError);
}

TEST_CASE("file loading reports unopenable paths") {
  try {
    load_instance_file("/nonexistent/nowhere.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.message() == "cannot open file");
    CHECK(e.where() == "/nonexistent/nowhere.json");
  }
}
