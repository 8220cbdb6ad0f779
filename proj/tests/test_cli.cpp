#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "relfix/cli.hpp"
#include "relfix/instance.hpp"

using namespace relfix;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  Run r;
  r.code = run_cli(args, r.out, r.err);
  return r;
}

} // namespace

TEST_CASE("check exits by the worst verdict across the table") {
  Run pass = cli({"check", "example4.3", "--theorems", "T2.1"});
  CHECK(pass.code == 0);
  CHECK(pass.err.empty());
  CHECK(pass.out.find("T2.1") != std::string::npos);
  CHECK(pass.out.find("[pass]") != std::string::npos);

  Run fail = cli({"check", "example4.1", "--theorems", "T2.1,T1.17"});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("T1.17") != std::string::npos);
  CHECK(fail.out.find("FAIL") != std::string::npos);

  Run unknown = cli({"check", "example4.2", "--theorems", "C2.10"});
  CHECK(unknown.code == 2);
  CHECK(unknown.out.find("unknown") != std::string::npos);

  Run dflt = cli({"check", "example4.2"});
  CHECK(dflt.code == 1);
  CHECK(dflt.out.find("C2.8") != std::string::npos);
  CHECK(dflt.out.find("T1.17") != std::string::npos);
}

TEST_CASE("check accepts bare ids, file paths, and rejects junk") {
  Run bare = cli({"check", "4.3", "--theorems", "T2.1"});
  Run byid = cli({"check", "example4.3", "--theorems", "T2.1"});
  CHECK(bare.code == 0);
  CHECK(bare.out == byid.out);

  Run file = cli({"check", data_directory() + "/example4.3.json", "--theorems", "T2.1"});
  CHECK(file.code == 0);

  Run missing = cli({"check", "no-such-instance"});
  CHECK(missing.code == 64);
  CHECK_FALSE(missing.err.empty());

  Run badtheorem = cli({"check", "example4.3", "--theorems", "T9.9"});
  CHECK(badtheorem.code == 64);
  CHECK(badtheorem.err.find("T9.9") != std::string::npos);
}

TEST_CASE("malformed documents produce a positioned diagnostic and exit 64") {
  std::string path = "bad_cli_doc.json";
  {
    std::ofstream f(path);
    f << "{\n  \"space\": nonsense\n}\n";
  }
  Run r = cli({"check", path});
  CHECK(r.code == 64);
  CHECK(r.err.find(path + ":2:") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("solve iterates from the requested or inferred start") {
  Run flag = cli({"solve", "example4.1", "--x0", "1"});
  CHECK(flag.code == 0);
  CHECK(flag.out.find("Converged, iterations 40") != std::string::npos);
  CHECK(flag.out.find("fixed point: 0") != std::string::npos);

  Run byx0 = cli({"solve", "example4.2"});
  CHECK(byx0.code == 0);
  CHECK(byx0.out.find("x0=1") != std::string::npos);

  Run all = cli({"solve", "example4.3", "--all-starts"});
  CHECK(all.code == 0);
  CHECK(all.out.find("x0=0") != std::string::npos);
  CHECK(all.out.find("x0=3") != std::string::npos);
  CHECK(all.out.find("x0=4") != std::string::npos);

  Run outside = cli({"solve", "example4.1", "--x0", "99"});
  CHECK(outside.code == 64);

  Run budget = cli({"solve", "example4.1", "--x0", "1", "--budget", "5"});
  CHECK(budget.code == 2);
  CHECK(budget.out.find("BudgetExhausted") != std::string::npos);
}

TEST_CASE("reproduce matches the golden reports byte for byte") {
  for (const char* id : {"4.1", "4.2", "4.3"}) {
    Run r = cli({"reproduce", id});
    CHECK(r.code == 0);
    CHECK(r.out.find("golden: exact match") != std::string::npos);
  }

  Run bad = cli({"reproduce", "9.9"});
  CHECK(bad.code == 64);
  CHECK(bad.err.find("unknown example id '9.9'") != std::string::npos);
  CHECK(bad.err.find("4.1, 4.2, 4.3") != std::string::npos);
}

TEST_CASE("output is byte-identical across repeated runs") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"check", "example4.1"},
        std::vector<std::string>{"solve", "example4.3", "--all-starts"},
        std::vector<std::string>{"reproduce", "4.2"},
        std::vector<std::string>{"check", "example4.3", "--format", "machine"}}) {
    Run a = cli(args);
    Run b = cli(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}

TEST_CASE("machine format emits structured verdicts that mirror the text") {
  Run r = cli({"check", "example4.3", "--theorems", "T2.1,T1.18", "--format", "machine"});
  CHECK(r.code == 1);
  nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("rows"));
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["theorem"] == "T2.1");
  CHECK(j["rows"][0]["report"]["overall"]["grade"] == "Holds");
  CHECK(j["rows"][1]["theorem"] == "T1.18");
  CHECK(j["rows"][1]["report"]["overall"]["grade"] == "Fails");
  CHECK(j["rows"][1]["report"]["first_failing"] == "(v)");
  auto w = j["rows"][1]["report"]["slots"][4]["verdict"]["witness"];
  CHECK(w["points"] == nlohmann::json::array({1.0, 2.0}));

  // Solve emits one entry per start, so the payload is always an array.
  Run s = cli({"solve", "example4.1", "--x0", "1", "--format", "machine"});
  nlohmann::json sj = nlohmann::json::parse(s.out);
  REQUIRE(sj.is_array());
  REQUIRE(sj.size() == 1);
  CHECK(sj[0]["orbit"]["status"] == "Converged");
  CHECK(sj[0]["orbit"]["iterations"] == 40);
  CHECK(sj[0]["fixed_point"] == 0.0);

  Run multi = cli({"solve", "example4.3", "--all-starts", "--format", "machine"});
  nlohmann::json mj = nlohmann::json::parse(multi.out);
  CHECK(mj.size() == 3);
}

TEST_CASE("usage errors exit 64 and help exits 0") {
  CHECK(cli({}).code == 64);
  CHECK(cli({"frobnicate"}).code == 64);
  CHECK(cli({"check"}).code == 64);
  CHECK(cli({"solve", "example4.1", "--x0", "abc"}).code == 64);
  CHECK(cli({"--help"}).code == 0);
  Run h = cli({"--help"});
  CHECK(h.out.find("check") != std::string::npos);
  CHECK(h.out.find("reproduce") != std::string::npos);
}

TEST_CASE("the property subcommand runs and reports its tally") {
  Run ok = cli({"properties", "--cases", "40", "--seed", "7"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("property suite: 40 cases") != std::string::npos);
  CHECK(ok.out.find("ok") != std::string::npos);

  Run mutated = cli({"properties", "--cases", "40", "--seed", "7", "--mutate-envelope"});
  CHECK(mutated.code == 1);
  CHECK(mutated.out.find("FAIL") != std::string::npos);
  CHECK(mutated.out.find("witness (") != std::string::npos);
}
