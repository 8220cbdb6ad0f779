#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <stdexcept>

#include "relfix/selfmap.hpp"

using namespace relfix;

namespace {

std::shared_ptr<const MetricSpace> interval_space(Interval c) {
  return std::make_shared<const MetricSpace>(MetricSpace::intervals(IntervalUnion({c})));
}

// The halving-then-constant map: f(x) = x/2 on (-1,2], f(x) = 1 on (2,4).
SelfMap halving_map(std::shared_ptr<const MetricSpace> x) {
  return SelfMap::piecewise(x, {{Interval::make(-1, 2, false, true), 0.5, 0},
                                {Interval::make(2, 4, false, false), 0, 1}});
}

} // namespace

TEST_CASE("piecewise evaluation follows the owning piece") {
  auto x = interval_space(Interval::open(-1, 4));
  SelfMap f = halving_map(x);
  CHECK(f.apply(1) == 0.5);
  CHECK(f.apply(2) == 1);
  CHECK(f.apply(2.5) == 1);
  CHECK(f.apply(-0.5) == -0.25);
  CHECK_THROWS_AS(f.apply(4), std::invalid_argument);
  CHECK(f.breakpoints() == std::vector<double>{2});
}

TEST_CASE("piece domains must partition the carrier exactly") {
  auto x = interval_space(Interval::open(-1, 4));
  CHECK_THROWS_AS(SelfMap::piecewise(x, {{Interval::make(-1, 2, false, true), 0.5, 0},
                                         {Interval::make(2.5, 4, false, false), 0, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SelfMap::piecewise(x, {{Interval::make(-1, 2, false, true), 0.5, 0},
                                         {Interval::make(2, 4, true, false), 0, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SelfMap::piecewise(x, {{Interval::open(-1, 4), 0.5, 0},
                                         {Interval::point(2), 0, 1}}),
                  std::invalid_argument);
}

TEST_CASE("self-map constructors reject escaping images") {
  auto x = interval_space(Interval::closed(0, 1));
  CHECK_THROWS_AS(SelfMap::piecewise(x, {{Interval::closed(0, 1), 2, 0}}),
                  std::invalid_argument);
  CHECK_NOTHROW(SelfMap::piecewise_unchecked(x, {{Interval::closed(0, 1), 2, 0}}));

  auto fin = std::make_shared<const MetricSpace>(MetricSpace::finite({0, 1}));
  CHECK_THROWS_AS(SelfMap::table(fin, {{0, 5}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(SelfMap::table(fin, {{0, 0}}), std::invalid_argument);
  CHECK_NOTHROW(SelfMap::table_unchecked(fin, {{0, 5}, {1, 0}}));
}

TEST_CASE("image is computed exactly with endpoint openness") {
  auto x = interval_space(Interval::open(-1, 4));
  SelfMap f = halving_map(x);
  PointSet img = f.image();
  CHECK(img.contains(1));
  CHECK(img.contains(-0.25));
  CHECK_FALSE(img.contains(-0.5));
  CHECK_FALSE(img.contains(1.5));
  CHECK(img.intervals() == IntervalUnion({Interval::make(-0.5, 1, false, true)}));

  auto fin = std::make_shared<const MetricSpace>(MetricSpace::finite({0, 1, 2}));
  SelfMap g = SelfMap::table(fin, {{0, 0}, {1, 0}, {2, 1}});
  CHECK(g.image() == PointSet::finite({0, 1}));
}

TEST_CASE("monotonicity check is exact and carries a descending witness") {
  auto x = interval_space(Interval::open(-1, 4));
  CHECK(halving_map(x).nondecreasing().grade == Grade::Holds);

  SelfMap drop = SelfMap::piecewise(x, {{Interval::make(-1, 2, false, true), 0.5, 0},
                                        {Interval::make(2, 4, false, false), 0, 0}});
  Verdict v = drop.nondecreasing();
  REQUIRE(v.grade == Grade::Fails);
  REQUIRE(v.witness.has_value());
  REQUIRE(v.witness->points.size() == 2);
  double a = v.witness->points[0], b = v.witness->points[1];
  CHECK(a >= b);
  CHECK(drop.apply(a) < drop.apply(b));
}

TEST_CASE("junction continuity is judged one side at a time") {
  auto x = interval_space(Interval::open(-1, 4));
  SelfMap f = halving_map(x);
  CHECK(f.right_continuous().grade == Grade::Holds);
  CHECK(f.continuous().grade == Grade::Holds);

  SelfMap jump = SelfMap::piecewise(x, {{Interval::make(-1, 2, false, true), 0.5, 0},
                                        {Interval::make(2, 4, false, false), 0, 1.5}});
  CHECK(jump.right_continuous().grade == Grade::Fails);
  CHECK(jump.left_continuous().grade == Grade::Holds);
  CHECK(jump.continuous().grade == Grade::Fails);

  auto closed = interval_space(Interval::closed(0, 4));
  SelfMap step = SelfMap::piecewise(closed, {{Interval::make(0, 1, true, false), 0, 0},
                                             {Interval::make(1, 2, true, false), 0, 3},
                                             {Interval::closed(2, 4), 0, 4}});
  CHECK(step.right_continuous().grade == Grade::Holds);
  Verdict left = step.left_continuous();
  REQUIRE(left.grade == Grade::Fails);
  CHECK(left.witness->points[0] == 1);

  auto fin = std::make_shared<const MetricSpace>(MetricSpace::finite({0, 1}));
  SelfMap tab = SelfMap::table(fin, {{0, 1}, {1, 0}});
  CHECK(tab.continuous().grade == Grade::Holds);
}
