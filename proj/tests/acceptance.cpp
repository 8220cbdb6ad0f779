// Acceptance gate: re-derives the headline facts of the three shipped
// examples and the library-wide guarantees, printing one PASS/FAIL line per
// criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "relfix/checker.hpp"
#include "relfix/cli.hpp"
#include "relfix/comparison.hpp"
#include "relfix/contraction.hpp"
#include "relfix/instance.hpp"
#include "relfix/point_set.hpp"
#include "relfix/property_suite.hpp"
#include "relfix/relation.hpp"
#include "relfix/selfmap.hpp"
#include "relfix/solver.hpp"
#include "relfix/space.hpp"
#include "relfix/verdict.hpp"

namespace {

using namespace relfix;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  bool ok = true;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      problems.push_back(what);
    }
  }
};

const TheoremRow* find_row(const TheoremComparison& cmp, TheoremId id) {
  for (const TheoremRow& r : cmp.rows)
    if (r.id == id) return &r;
  return nullptr;
}

const HypothesisSlot* find_slot(const HypothesisReport& rep, const std::string& label) {
  for (const HypothesisSlot& s : rep.slots)
    if (s.label == label) return &s;
  return nullptr;
}

bool slots_all_pass(const HypothesisReport& rep) {
  for (const HypothesisSlot& s : rep.slots)
    if (!s.verdict.passes()) return false;
  return true;
}

// Fails-at-(i) rows must pin the incompleteness witness: the claimed limit
// sits at the front of the witness points.
void require_open_endpoint(Criterion& c, const TheoremRow* row, const char* name,
                           const std::vector<double>& endpoints) {
  c.require(row && row->report.has_value(), std::string(name) + " row missing");
  if (!row || !row->report) return;
  c.require(row->report->overall.grade == Grade::Fails, std::string(name) + " should fail");
  c.require(row->report->first_failing == "(i)", std::string(name) + " should fail at slot (i)");
  const HypothesisSlot* slot = find_slot(*row->report, "(i)");
  c.require(slot && slot->verdict.witness.has_value(),
            std::string(name) + " slot (i) needs a witness");
  if (!slot || !slot->verdict.witness) return;
  const std::vector<double>& pts = slot->verdict.witness->points;
  bool hit = false;
  for (double e : endpoints)
    if (!pts.empty() && pts.front() == e) hit = true;
  c.require(hit, std::string(name) + " witness should name an open endpoint");
}

Criterion criterion_example_41() {
  Criterion c;
  auto t0 = Clock::now();
  InstanceDocument doc = builtin_instance("4.1");
  const ContractionInstance& inst = doc.instance;

  c.require(fixed_points(inst.map) == PointSet::finite({0}), "fixed-point set should be {0}");

  Orbit orb = picard(inst.map, 1.0, {doc.solver.max_iters, doc.solver.tol});
  c.require(orb.status == Orbit::Status::Converged, "orbit from 1 should converge");
  c.require(orb.iterations == 40, "orbit should take exactly 40 iterations");
  c.require(orb.limit.has_value() && *orb.limit == 0.0, "orbit limit should snap to 0");
  c.require(orb.points.size() == 41, "orbit should record 41 points");
  for (std::size_t n = 0; n < orb.points.size(); ++n)
    c.require(std::abs(orb.points[n]) <= std::ldexp(2.0, -static_cast<int>(n)),
              "orbit point " + std::to_string(n) + " should obey the geometric bound");

  TheoremComparison cmp = compare_theorems(inst, doc.theorems, doc.budgets.pair_budget);
  for (TheoremId id : {TheoremId::T2_1, TheoremId::T2_5, TheoremId::T2_7}) {
    const TheoremRow* row = find_row(cmp, id);
    c.require(row && row->report.has_value(), "bundle row missing");
    if (!row || !row->report) continue;
    c.require(row->report->overall.passes() && slots_all_pass(*row->report),
              theorem_name(id) + std::string(" hypothesis table should pass"));
    c.require(row->report->conclusion.has_value() && row->report->conclusion->passes(),
              theorem_name(id) + std::string(" conclusion should validate"));
  }
  require_open_endpoint(c, find_row(cmp, TheoremId::T1_17), "T1.17", {-1, 4});
  require_open_endpoint(c, find_row(cmp, TheoremId::C2_2), "C2.2", {-1, 4});

  c.require(seconds_since(t0) < 1.0, "example 4.1 facts should reproduce in under 1 s");
  return c;
}

Criterion criterion_example_42() {
  Criterion c;
  auto t0 = Clock::now();
  InstanceDocument doc = builtin_instance("4.2");
  const ContractionInstance& inst = doc.instance;

  c.require(fixed_points(inst.map) == PointSet::finite({0}), "fixed-point set should be {0}");

  AdmissibleStarts closure_starts =
      compute_admissible_starts(inst.x(), symmetric_closure(inst.relation), inst.map);
  c.require(closure_starts.set == PointSet::finite({0, 1}),
            "admissible starts over the closure should be {0, 1}");

  c.require(inst.y().contains(0) && inst.y().contains(1) && inst.y().contains(0.5) &&
                !inst.y().contains(1.5),
            "the distinguished subspace should be [0, 1]");

  TheoremComparison cmp = compare_theorems(inst, doc.theorems, doc.budgets.pair_budget);
  const TheoremRow* c28 = find_row(cmp, TheoremId::C2_8);
  c.require(c28 && c28->report.has_value(), "C2.8 row missing");
  if (c28 && c28->report) {
    c.require(c28->report->overall.grade == Grade::Holds, "C2.8 should pass exactly");
    c.require(slots_all_pass(*c28->report), "every C2.8 slot should pass");
    c.require(c28->report->conclusion.has_value() &&
                  c28->report->conclusion->grade == Grade::Holds &&
                  c28->report->conclusion->note.find("unique fixed point {0}") !=
                      std::string::npos,
              "C2.8 should conclude a unique fixed point at 0");
  }

  const TheoremRow* t117 = find_row(cmp, TheoremId::T1_17);
  require_open_endpoint(c, t117, "T1.17", {3});

  c.require(seconds_since(t0) < 1.0, "example 4.2 facts should reproduce in under 1 s");
  return c;
}

Criterion criterion_example_43() {
  Criterion c;
  auto t0 = Clock::now();
  InstanceDocument doc = builtin_instance("4.3");
  const ContractionInstance& inst = doc.instance;

  c.require(fixed_points(inst.map) == PointSet::finite({0, 4}),
            "fixed-point set should be {0, 4}");

  ContractionOutcome probe = check_contraction(inst, doc.budgets.pair_budget);
  c.require(probe.exhaustive, "the contraction check should be exhaustive");
  c.require(probe.pairs_checked == 6, "the contraction check should cover exactly 6 pairs");
  c.require(probe.verdict.grade == Grade::Holds, "the contraction check should pass exactly");

  // The only related pair moved apart by the map is (1, 2): distance 1 against
  // the envelope bound 0.75 * 2 = 1.5.
  std::size_t related_pairs = 0;
  std::size_t nonzero_cases = 0;
  bool headline_case = false;
  const std::vector<double>& support = inst.relation.support();
  for (double x : support)
    for (double y : support) {
      if (!related(inst.relation, x, y)) continue;
      ++related_pairs;
      double lhs = inst.x().distance(inst.map.apply(x), inst.map.apply(y));
      if (lhs == 0) continue;
      ++nonzero_cases;
      double envelope = ciric_max4(inst.x(), inst.map, x, y);
      double rhs = evaluate(*inst.phi, envelope);
      headline_case = x == 1 && y == 2 && lhs == 1.0 && envelope == 2.0 && rhs == 1.5;
    }
  c.require(related_pairs == 6, "the relation should contribute 6 ordered pairs");
  c.require(nonzero_cases == 1, "exactly one pair should be moved apart by the map");
  c.require(headline_case, "the moved pair should be (1, 2) with 1 <= 3/2");

  TheoremComparison cmp = compare_theorems(inst, doc.theorems, doc.budgets.pair_budget);
  const TheoremRow* t21 = find_row(cmp, TheoremId::T2_1);
  c.require(t21 && t21->report.has_value(), "T2.1 row missing");
  if (t21 && t21->report) {
    c.require(t21->report->overall.grade == Grade::Holds, "T2.1 should pass exactly");
    c.require(t21->report->conclusion.has_value() &&
                  t21->report->conclusion->note.find("{0, 4}") != std::string::npos,
              "T2.1 should confirm the fixed points {0, 4}");
  }

  const TheoremRow* t118 = find_row(cmp, TheoremId::T1_18);
  c.require(t118 && t118->report.has_value(), "T1.18 row missing");
  if (t118 && t118->report) {
    c.require(t118->report->overall.grade == Grade::Fails, "T1.18 should fail");
    c.require(t118->report->first_failing == "(v)", "T1.18 should fail at slot (v)");
    const HypothesisSlot* five = find_slot(*t118->report, "(v)");
    c.require(five && five->verdict.witness.has_value(), "T1.18 slot (v) needs a witness");
    if (five && five->verdict.witness) {
      c.require(five->verdict.witness->points == std::vector<double>{1, 2},
                "T1.18 witness should be the pair (1, 2)");
      c.require(five->verdict.witness->lhs == 1.0,
                "T1.18 witness should carry the unit residual");
    }
    c.require(t118->adapted_condition.find("no admissible constant") != std::string::npos,
              "T1.18 should report that no constant below 1 works");
  }

  const TheoremRow* t25 = find_row(cmp, TheoremId::T2_5);
  c.require(t25 && t25->report.has_value(), "T2.5 row missing");
  if (t25 && t25->report) {
    const HypothesisSlot* slot = find_slot(*t25->report, "(vi)");
    c.require(slot && slot->verdict.grade == Grade::Fails && slot->verdict.witness &&
                  slot->verdict.witness->points == std::vector<double>{0, 3},
              "image directedness should fail with witness (0, 3)");
  }

  const TheoremRow* t27 = find_row(cmp, TheoremId::T2_7);
  c.require(t27 && t27->report.has_value(), "T2.7 row missing");
  if (t27 && t27->report) {
    const HypothesisSlot* slot = find_slot(*t27->report, "(vi)'");
    c.require(slot && slot->verdict.grade == Grade::Fails && slot->verdict.witness &&
                  slot->verdict.witness->points == std::vector<double>{0, 3},
              "completeness of the image restriction should fail with witness (0, 3)");
  }

  c.require(seconds_since(t0) < 1.0, "example 4.3 facts should reproduce in under 1 s");
  return c;
}

Criterion criterion_property_suite() {
  Criterion c;
  auto t0 = Clock::now();
  PropertyOptions opts;
  PropertyResult res = run_property_suite(opts);
  c.require(res.ok, "the property suite found a violation: " + res.failure);
  c.require(res.cases_run >= 500, "the property suite should run at least 500 cases");
  c.require(res.checks_run > 0, "the property suite should record its checks");
  c.require(seconds_since(t0) < 30.0, "the property suite should finish in under 30 s");
  return c;
}

Criterion criterion_comparison_suite() {
  Criterion c;
  for (double k : {0.0, 0.5, 0.75, 0.99}) {
    PhiReport r = check_phi_membership(ComparisonFunction::linear(k));
    c.require(r.increasing.grade == Grade::Holds && r.summable.grade == Grade::Holds &&
                  r.below_identity.grade == Grade::Holds,
              "linear slope " + std::to_string(k) + " should pass every check exactly");
  }

  PhiReport ident = check_phi_membership(ComparisonFunction::table({{1, 1}, {2, 2}}));
  c.require(ident.below_identity.grade == Grade::Fails &&
                ident.below_identity.witness.has_value() &&
                !ident.below_identity.witness->points.empty(),
            "the identity table should fail the below-identity check with a witness");

  PhiReport harmonic = check_phi_membership(ComparisonFunction::rational(1));
  c.require(harmonic.summable.grade == Grade::Fails,
            "t/(1+t) should fail the summability check by divergence");

  PhiReport lambda = check_lambda_membership(ComparisonFunction::rational(2), 0.25);
  c.require(lambda.lambda_ok(), "t/(2+t) should pass the integrable-gauge checks");
  c.require(lambda.cross_check.has_value() && lambda.cross_check->passes(),
            "the integrable-gauge pass should cross-check as summable");
  return c;
}

Criterion criterion_displacement_bound() {
  Criterion c;
  std::size_t bounded_steps = 0;
  for (const std::string& id : builtin_ids()) {
    InstanceDocument doc = builtin_instance(id);
    const ContractionInstance& inst = doc.instance;

    std::vector<double> starts;
    if (doc.solver.x0) starts.push_back(*doc.solver.x0);
    AdmissibleStarts adm = compute_admissible_starts(inst.x(), inst.relation, inst.map);
    if (adm.set.finite()) {
      for (double p : adm.set.points()) starts.push_back(p);
    } else if (adm.witness) {
      starts.push_back(*adm.witness);
    }

    for (double x0 : starts) {
      Orbit orb = picard(inst.map, x0, {doc.solver.max_iters, doc.solver.tol});
      c.require(orb.status == Orbit::Status::Converged,
                "orbit from " + std::to_string(x0) + " on " + id + " should converge");
      Verdict v = check_displacement_bound(orb, *inst.phi);
      c.require(v.passes(), "displacements from " + std::to_string(x0) + " on " + id +
                                " should obey the iterated bound");
      bounded_steps += orb.displacements.size();
    }
  }
  c.require(bounded_steps > 0, "at least one orbit should record displacements");
  return c;
}

Criterion criterion_golden_transcripts() {
  Criterion c;
  for (const std::string& id : builtin_ids()) {
    std::string out;
    std::string err;
    int code = run_cli({"reproduce", id}, out, err);
    c.require(code == 0, "reproduce " + id + " should exit 0");
    c.require(out.find("golden: exact match") != std::string::npos,
              "reproduce " + id + " should match its golden transcript byte for byte");
  }
  return c;
}

int report(int index, const char* title, const Criterion& c) {
  std::printf("[%s] %d. %s\n", c.ok ? "PASS" : "FAIL", index, title);
  for (const std::string& p : c.problems) std::printf("       - %s\n", p.c_str());
  return c.ok ? 0 : 1;
}

} // namespace

int main() {
  int failures = 0;
  failures += report(1, "example 4.1: contractive halving map on an open interval", criterion_example_41());
  failures += report(2, "example 4.2: collapse map with a finite relation on [0, 3)", criterion_example_42());
  failures += report(3, "example 4.3: two fixed points and every uniqueness route blocked", criterion_example_43());
  failures += report(4, "property suite: 500 seeded random instances, zero violations", criterion_property_suite());
  failures += report(5, "comparison functions: membership verdicts and counterexamples", criterion_comparison_suite());
  failures += report(6, "displacement bounds: every recorded orbit obeys the iterated bound", criterion_displacement_bound());
  failures += report(7, "golden transcripts: shipped examples reproduce byte for byte", criterion_golden_transcripts());

  if (failures == 0) {
    std::printf("acceptance: all 7 criteria passed\n");
  } else {
    std::printf("acceptance: %d of 7 criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
