#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "relfix/property_suite.hpp"

using namespace relfix;

TEST_CASE("the default suite passes five hundred seeded cases") {
  PropertyOptions opts;
  PropertyResult r = run_property_suite(opts);
  CHECK(r.ok);
  CHECK(r.cases_run == 500);
  CHECK(r.checks_run > 10000);
  CHECK(r.failure.empty());
}

TEST_CASE("results are deterministic for a fixed seed and move with it") {
  PropertyOptions opts;
  opts.seed = 42;
  opts.cases = 120;
  PropertyResult a = run_property_suite(opts);
  PropertyResult b = run_property_suite(opts);
  CHECK(a.ok);
  CHECK(a.cases_run == b.cases_run);
  CHECK(a.checks_run == b.checks_run);

  opts.seed = 43;
  PropertyResult c = run_property_suite(opts);
  CHECK(c.ok);
  CHECK(c.checks_run != a.checks_run);
}

TEST_CASE("the envelope mutation is caught and shrunk to a replayable witness") {
  PropertyOptions opts;
  opts.cases = 200;
  opts.mutation = PropertyOptions::Mutation::DropEnvelopeTerm;
  PropertyResult r = run_property_suite(opts);
  CHECK_FALSE(r.ok);
  CHECK(r.failure.find("seed=1") != std::string::npos);
  CHECK(r.failure.find("case=") != std::string::npos);
  CHECK(r.failure.find("witness (") != std::string::npos);
  CHECK(r.failure.find("shrunken instance") != std::string::npos);
  CHECK(r.failure.find("points {") != std::string::npos);

  PropertyResult again = run_property_suite(opts);
  CHECK(again.failure == r.failure);
}
