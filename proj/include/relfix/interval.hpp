#pragma once

#include <string>
#include <vector>

namespace relfix {

// One interval of reals with explicit endpoint openness. Degenerate
// intervals (lo == hi) must be closed on both sides.
struct Interval {
  double lo = 0;
  double hi = 0;
  bool lo_closed = true;
  bool hi_closed = true;

  // Validates lo <= hi, finiteness, and closedness of degenerate intervals;
  // throws std::invalid_argument otherwise.
  static Interval make(double lo, double hi, bool lo_closed, bool hi_closed);
  static Interval closed(double lo, double hi) { return make(lo, hi, true, true); }
  static Interval open(double lo, double hi) { return make(lo, hi, false, false); }
  static Interval point(double v) { return make(v, v, true, true); }

  bool contains(double x) const;
  bool degenerate() const { return lo == hi; }
  double width() const { return hi - lo; }

  std::string to_string() const;

  bool operator==(const Interval&) const = default;
};

// Finite union of intervals kept in normal form: components sorted by lo,
// pairwise disjoint and non-adjacent, so two unions describe the same point
// set iff their component lists are identical.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> components); // normalizes

  const std::vector<Interval>& components() const { return comps_; }
  bool empty() const { return comps_.empty(); }
  bool contains(double x) const;
  bool subset_of(const IntervalUnion& other) const;
  bool all_degenerate() const;

  // Infimum / supremum of the union; requires non-empty.
  double inf() const;
  double sup() const;

  std::string to_string() const;

  bool operator==(const IntervalUnion&) const = default;

 private:
  std::vector<Interval> comps_;
};

} // namespace relfix
