#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <string>

#include "relfix/checker.hpp"
#include "relfix/instance.hpp"

using namespace relfix;

namespace {

std::shared_ptr<const MetricSpace> finite_space(std::vector<double> pts) {
  return std::make_shared<const MetricSpace>(MetricSpace::finite(std::move(pts)));
}

const TheoremRow& row_for(const TheoremComparison& cmp, TheoremId id) {
  for (const TheoremRow& r : cmp.rows)
    if (r.id == id) return r;
  REQUIRE(false);
  return cmp.rows.front();
}

} // namespace

TEST_CASE("bundle ids, conditions, and conclusions are catalogued") {
  for (TheoremId id : kAllTheorems) {
    CHECK(parse_theorem(theorem_name(id)) == id);
    CHECK(std::string(theorem_summary(id)) != "");
  }
  CHECK_FALSE(parse_theorem("T9.9").has_value());
  CHECK_FALSE(parse_theorem("t2.1").has_value());

  CHECK(required_condition(TheoremId::T2_1) == ConditionTag::PhiM);
  CHECK(required_condition(TheoremId::C2_2) == ConditionTag::PhiM);
  CHECK(required_condition(TheoremId::T1_17) == ConditionTag::PhiN);
  CHECK(required_condition(TheoremId::C2_8) == ConditionTag::PhiN);
  CHECK(required_condition(TheoremId::C2_10) == ConditionTag::LambdaN);
  CHECK(required_condition(TheoremId::T1_18) == ConditionTag::Banach);
  CHECK(required_condition(TheoremId::C3_1) == ConditionTag::Ciric);
  CHECK(required_condition(TheoremId::C3_3) == ConditionTag::RationalSum);
  CHECK(required_condition(TheoremId::C3_6) == ConditionTag::Kannan);
  CHECK(required_condition(TheoremId::C3_8) == ConditionTag::Chatterjea);

  CHECK(conclusion_kind(TheoremId::T2_1) == ConclusionKind::Existence);
  CHECK(conclusion_kind(TheoremId::C2_4) == ConclusionKind::Existence);
  CHECK(conclusion_kind(TheoremId::T2_5) == ConclusionKind::ExistenceUnique);
  CHECK(conclusion_kind(TheoremId::C2_8) == ConclusionKind::ExistenceUnique);
  CHECK(conclusion_kind(TheoremId::T1_18) == ConclusionKind::ExistenceUnique);
}

TEST_CASE("check_hypotheses rejects a mismatched condition shape") {
  InstanceDocument doc = builtin_instance("4.3");
  CHECK_THROWS_AS(check_hypotheses(doc.instance, TheoremId::T1_17), std::invalid_argument);
  CHECK_NOTHROW(check_hypotheses(doc.instance, TheoremId::T2_1));
}

TEST_CASE("the open space defeats plain completeness but not the subspace bundle") {
  InstanceDocument doc = builtin_instance("4.1");
  TheoremComparison cmp = compare_theorems(doc.instance, doc.theorems, doc.budgets.pair_budget);

  const TheoremRow& t21 = row_for(cmp, TheoremId::T2_1);
  REQUIRE(t21.report.has_value());
  CHECK(t21.report->slots.size() == 5);
  CHECK(t21.report->overall.grade == Grade::HoldsSampled);
  CHECK(t21.report->first_failing.empty());
  REQUIRE(t21.report->conclusion.has_value());
  CHECK(t21.report->conclusion->passes());

  const TheoremRow& t117 = row_for(cmp, TheoremId::T1_17);
  REQUIRE(t117.report.has_value());
  CHECK(t117.report->overall.grade == Grade::Fails);
  CHECK(t117.report->first_failing == "(i)");
  CHECK_FALSE(t117.report->conclusion.has_value());
  CHECK(t117.adapted_condition.find("reused") != std::string::npos);

  const TheoremRow& c22 = row_for(cmp, TheoremId::C2_2);
  REQUIRE(c22.report.has_value());
  CHECK(c22.report->overall.grade == Grade::Fails);
  CHECK(c22.report->first_failing == "(i)");
  CHECK(c22.report->note.find("whole space") != std::string::npos);

  CHECK(row_for(cmp, TheoremId::T2_5).report->overall.grade == Grade::HoldsSampled);
  CHECK(row_for(cmp, TheoremId::T2_7).report->overall.grade == Grade::HoldsSampled);
}

TEST_CASE("the symmetric-closure bundle is fully decidable on the finite-support instance") {
  InstanceDocument doc = builtin_instance("4.2");
  TheoremComparison cmp = compare_theorems(doc.instance, doc.theorems, doc.budgets.pair_budget);

  const TheoremRow& c28 = row_for(cmp, TheoremId::C2_8);
  REQUIRE(c28.report.has_value());
  CHECK(c28.report->overall.grade == Grade::Holds);
  for (const HypothesisSlot& s : c28.report->slots) CHECK(s.verdict.grade == Grade::Holds);
  REQUIRE(c28.report->conclusion.has_value());
  CHECK(c28.report->conclusion->grade == Grade::Holds);
  CHECK(c28.report->conclusion->note.find("unique fixed point {0}") != std::string::npos);
  CHECK(c28.report->note.find("symmetric closure") != std::string::npos);

  const TheoremRow& t117 = row_for(cmp, TheoremId::T1_17);
  REQUIRE(t117.report.has_value());
  CHECK(t117.report->overall.grade == Grade::Fails);
  CHECK(t117.report->first_failing == "(i)");
  REQUIRE(t117.report->slots[0].verdict.witness.has_value());
  CHECK(t117.report->slots[0].verdict.witness->points.front() == 3);
}

TEST_CASE("negative slots on the two-fixed-point instance carry exact witnesses") {
  InstanceDocument doc = builtin_instance("4.3");
  TheoremComparison cmp = compare_theorems(doc.instance, doc.theorems, doc.budgets.pair_budget);

  const TheoremRow& t21 = row_for(cmp, TheoremId::T2_1);
  REQUIRE(t21.report.has_value());
  CHECK(t21.report->overall.grade == Grade::Holds);
  REQUIRE(t21.report->conclusion.has_value());
  CHECK(t21.report->conclusion->grade == Grade::Holds);
  CHECK(t21.report->conclusion->note.find("{0, 4}") != std::string::npos);

  const TheoremRow& t118 = row_for(cmp, TheoremId::T1_18);
  REQUIRE(t118.report.has_value());
  CHECK(t118.report->overall.grade == Grade::Fails);
  CHECK(t118.report->first_failing == "(v)");
  const HypothesisSlot& five = t118.report->slots[4];
  REQUIRE(five.verdict.witness.has_value());
  CHECK(five.verdict.witness->points == std::vector<double>{1, 2});
  CHECK(five.verdict.witness->lhs == 1.0);
  CHECK(five.verdict.witness->rhs == 1.0);
  CHECK(t118.adapted_condition.find("no admissible constant") != std::string::npos);
  const HypothesisSlot& six = t118.report->slots[5];
  CHECK(six.uniqueness_role);
  CHECK(six.verdict.grade == Grade::Fails);
  CHECK(six.verdict.witness->points == std::vector<double>{0, 4});

  const TheoremRow& t25 = row_for(cmp, TheoremId::T2_5);
  REQUIRE(t25.report.has_value());
  CHECK(t25.report->first_failing == "(vi)");
  CHECK(t25.report->slots[5].verdict.witness->points == std::vector<double>{0, 3});

  const TheoremRow& t27 = row_for(cmp, TheoremId::T2_7);
  REQUIRE(t27.report.has_value());
  CHECK(t27.report->first_failing == "(vi)'");
  CHECK(t27.report->slots[5].verdict.witness->points == std::vector<double>{0, 3});
}

TEST_CASE("linear conditions fold and translate into other shapes") {
  auto fin = finite_space({0, 1, 2});
  SelfMap zero = SelfMap::table(fin, {{0, 0}, {1, 0}, {2, 0}});
  ContractionInstance inst =
      make_instance(fin, Relation::universal(fin), zero, Condition::banach(0.5));

  const TheoremId ids[] = {TheoremId::C3_1, TheoremId::C2_4, TheoremId::C3_3,
                           TheoremId::C3_6, TheoremId::C3_10};
  TheoremComparison cmp = compare_theorems(inst, ids);

  const TheoremRow& c31 = row_for(cmp, TheoremId::C3_1);
  CHECK(c31.adapted_condition.find("folded") != std::string::npos);
  CHECK(c31.adapted_condition.find("0.5") != std::string::npos);
  CHECK(c31.report->overall.grade == Grade::Holds);

  const TheoremRow& c24 = row_for(cmp, TheoremId::C2_4);
  CHECK(c24.adapted_condition.find("slope 0.5") != std::string::npos);
  CHECK(c24.report->overall.grade == Grade::Holds);

  const TheoremRow& c33 = row_for(cmp, TheoremId::C3_3);
  CHECK(c33.adapted_condition.find("exact supremum") != std::string::npos);
  CHECK(c33.report->overall.grade == Grade::Holds);

  CHECK(row_for(cmp, TheoremId::C3_6).report->overall.grade == Grade::Holds);

  const TheoremRow& c310 = row_for(cmp, TheoremId::C3_10);
  CHECK(c310.report->note.find("universal relation") != std::string::npos);
  CHECK(c310.report->overall.grade == Grade::Holds);
  CHECK(c310.report->conclusion->grade == Grade::Holds);

  // Averaged-displacement constants translate at twice the rate.
  ContractionInstance kan =
      make_instance(fin, Relation::universal(fin), zero, Condition::kannan(0.3));
  const TheoremId phi_only[] = {TheoremId::C2_4};
  TheoremComparison kcmp = compare_theorems(kan, phi_only);
  CHECK(kcmp.rows[0].adapted_condition.find("slope 0.6") != std::string::npos);

  ContractionInstance rat =
      make_instance(fin, Relation::universal(fin), zero, Condition::rational_sum(0.1, 0.1, 0.1));
  TheoremComparison rcmp = compare_theorems(rat, phi_only);
  CHECK(rcmp.rows[0].adapted_condition.find("slope 0.5") != std::string::npos);
}

TEST_CASE("infeasible constants override the condition slot with the extremal pair") {
  auto fin = finite_space({0, 1, 2});
  SelfMap spread = SelfMap::table(fin, {{0, 0}, {1, 2}, {2, 0}});
  ContractionInstance inst = make_instance(fin, Relation::universal(fin), spread,
                                           Condition::phi_m(), ComparisonFunction::linear(0.9));

  const TheoremId ids[] = {TheoremId::T1_18};
  TheoremComparison cmp = compare_theorems(inst, ids);
  const TheoremRow& row = cmp.rows[0];
  REQUIRE(row.report.has_value());
  CHECK(row.adapted_condition.find("ratio reaches 2") != std::string::npos);
  const HypothesisSlot& five = row.report->slots[4];
  REQUIRE(five.verdict.grade == Grade::Fails);
  CHECK(five.verdict.witness->points == std::vector<double>{0, 1});
  CHECK(five.verdict.witness->lhs == 2.0);
  CHECK(five.verdict.witness->rhs == 1.0);

  // Two distinct fixed points put positive displacement over a vanishing
  // own-displacement denominator: no constant of that shape can exist.
  auto two = finite_space({0, 1});
  SelfMap ident = SelfMap::table(two, {{0, 0}, {1, 1}});
  ContractionInstance fixed2 = make_instance(two, Relation::universal(two), ident,
                                             Condition::phi_m(), ComparisonFunction::linear(0.5));
  const TheoremId kannan_only[] = {TheoremId::C3_6};
  TheoremComparison kcmp = compare_theorems(fixed2, kannan_only);
  REQUIRE(kcmp.rows[0].report.has_value());
  CHECK(kcmp.rows[0].adapted_condition ==
        "no admissible constant exists for this shape");
  CHECK(kcmp.rows[0].report->slots[4].verdict.grade == Grade::Fails);
  CHECK(kcmp.rows[0].report->slots[4].verdict.witness->points == std::vector<double>{0, 1});
}

TEST_CASE("a gauge that cannot be certified downgrades the slot to unknown") {
  InstanceDocument doc = builtin_instance("4.2");
  const TheoremId ids[] = {TheoremId::C2_10};
  TheoremComparison cmp = compare_theorems(doc.instance, ids, doc.budgets.pair_budget);
  const TheoremRow& row = cmp.rows[0];
  REQUIRE(row.report.has_value());
  CHECK(row.report->slots[4].label == "(v)'");
  CHECK(row.report->slots[4].verdict.grade == Grade::Unknown);
  CHECK(row.report->overall.grade == Grade::Unknown);
  CHECK(row.report->first_failing == "(v)'");
  CHECK_FALSE(row.report->conclusion.has_value());
}

TEST_CASE("conclusion validation contradicts manufactured reports") {
  auto fin = finite_space({0, 1});
  SelfMap swap = SelfMap::table(fin, {{0, 1}, {1, 0}});
  ContractionInstance none = make_instance(fin, Relation::universal(fin), swap,
                                           Condition::phi_m(), ComparisonFunction::linear(0.5));
  HypothesisReport fake;
  fake.id = TheoremId::T2_1;
  fake.overall = Verdict::holds("manufactured");
  Verdict v = validate_conclusion(none, fake);
  CHECK(v.grade == Grade::Fails);
  CHECK(v.note.find("no fixed point") != std::string::npos);

  auto three = finite_space({0, 1, 2});
  SelfMap twofix = SelfMap::table(three, {{0, 0}, {1, 0}, {2, 2}});
  ContractionInstance pair = make_instance(three, Relation::universal(three), twofix,
                                           Condition::phi_m(), ComparisonFunction::linear(0.5));
  fake.id = TheoremId::T2_5;
  Verdict u = validate_conclusion(pair, fake);
  CHECK(u.grade == Grade::Fails);
  CHECK(u.witness->points == std::vector<double>{0, 2});
  CHECK(u.note.find("contradict the uniqueness conclusion") != std::string::npos);

  fake.overall = Verdict::fails({{}, "nope"}, "manufactured failure");
  CHECK_THROWS_AS(validate_conclusion(pair, fake), std::invalid_argument);
}
