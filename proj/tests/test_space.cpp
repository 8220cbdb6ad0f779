#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <stdexcept>

#include "relfix/relation.hpp"
#include "relfix/space.hpp"

using namespace relfix;

namespace {

std::shared_ptr<const MetricSpace> interval_space(Interval c) {
  return std::make_shared<const MetricSpace>(MetricSpace::intervals(IntervalUnion({c})));
}

} // namespace

TEST_CASE("usual metric on interval carriers") {
  auto x = interval_space(Interval::open(-1, 4));
  CHECK(x->distance(1, 3) == 2);
  CHECK(x->distance(3, 1) == 2);
  CHECK(x->distance(2, 2) == 0);
  CHECK(x->contains(0));
  CHECK_FALSE(x->contains(-1));
  CHECK_THROWS_AS(x->distance(-1, 0), std::invalid_argument);
}

TEST_CASE("finite carriers sort points and keep the matrix aligned") {
  MetricSpace s = MetricSpace::finite({3, 0, 1}, DistanceMatrix(3, {0, 5, 4,
                                                                    5, 0, 2,
                                                                    4, 2, 0}));
  CHECK(s.points() == std::vector<double>{0, 1, 3});
  CHECK(s.distance(3, 0) == 5);
  CHECK(s.distance(0, 1) == 2);
  CHECK(s.distance(1, 3) == 4);
  CHECK(verify_metric_axioms(s).grade == Grade::Holds);
}

TEST_CASE("metric axiom checker catches violations exhaustively") {
  MetricSpace triangle_bad = MetricSpace::finite({0, 1, 2}, DistanceMatrix(3, {0, 1, 9,
                                                                               1, 0, 1,
                                                                               9, 1, 0}));
  Verdict v = verify_metric_axioms(triangle_bad);
  REQUIRE(v.grade == Grade::Fails);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->points.size() == 3);

  MetricSpace zero_off = MetricSpace::finite({0, 1}, DistanceMatrix(2, {0, 0, 0, 0}));
  CHECK(verify_metric_axioms(zero_off).grade == Grade::Fails);

  CHECK_THROWS_AS(DistanceMatrix(2, {0, 1, 2, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(MetricSpace::finite({0, 1}, DistanceMatrix(3, std::vector<double>(9, 0))),
                  std::invalid_argument);
}

TEST_CASE("completeness is endpoint closedness for interval carriers") {
  CHECK(is_complete(*interval_space(Interval::closed(0, 4))).grade == Grade::Holds);
  CHECK(is_complete(MetricSpace::finite({1, 2, 5})).grade == Grade::Holds);

  Verdict open_right = is_complete(*interval_space(Interval::make(0, 3, true, false)));
  REQUIRE(open_right.grade == Grade::Fails);
  REQUIRE(open_right.witness.has_value());
  CHECK(open_right.witness->points.front() == 3);

  Verdict open_left = is_complete(*interval_space(Interval::open(-1, 4)));
  REQUIRE(open_left.grade == Grade::Fails);
  CHECK(open_left.witness->points.front() == -1);
}

TEST_CASE("relational completeness decision rules per relation kind") {
  auto half = interval_space(Interval::make(0, 3, true, false));
  auto open_both = interval_space(Interval::open(-1, 4));

  CHECK(is_r_complete(*half, Relation::universal(half)).grade == Grade::Fails);
  CHECK(is_r_complete(*half, Relation::geq(half)).grade == Grade::Holds);
  CHECK(is_r_complete(*half, Relation::leq(half)).grade == Grade::Fails);
  CHECK(is_r_complete(*open_both, Relation::geq(open_both)).grade == Grade::Fails);

  Relation pairs = Relation::pair_list(half, {{0, 1}, {1, 1}});
  CHECK(is_r_complete(*half, pairs).grade == Grade::Holds);

  auto fin = std::make_shared<const MetricSpace>(MetricSpace::finite({0, 1, 2}));
  CHECK(is_r_complete(*fin, Relation::leq(fin)).grade == Grade::Holds);
}

TEST_CASE("left-closed components make non-increasing sequences converge") {
  auto y = interval_space(Interval::make(-0.5, 2, true, false));
  CHECK(is_r_complete(*y, Relation::geq(y)).grade == Grade::Holds);
  CHECK(is_complete(*y).grade == Grade::Fails);
}

TEST_CASE("carrier sets round-trip") {
  auto x = interval_space(Interval::make(0, 3, true, false));
  PointSet c = x->carrier_set();
  CHECK_FALSE(c.finite());
  CHECK(c.contains(0));
  CHECK_FALSE(c.contains(3));

  MetricSpace fin = MetricSpace::finite({2, 0});
  CHECK(fin.carrier_set() == PointSet::finite({0, 2}));
}
