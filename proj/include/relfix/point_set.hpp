#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relfix/interval.hpp"

namespace relfix {

// A described subset of a carrier: either an explicit finite list of points
// or an interval union. Interval unions whose components are all degenerate
// canonicalize to the finite form, so {0, 3, 4} compares equal no matter how
// it was produced.
class PointSet {
 public:
  PointSet() : finite_(true) {}

  static PointSet finite(std::vector<double> pts); // sorts, dedups
  static PointSet of(IntervalUnion u);
  static PointSet empty_set() { return PointSet(); }

  bool finite() const { return finite_; }
  bool empty() const;
  bool contains(double x) const;
  bool subset_of(const PointSet& other) const;
  bool subset_of(const IntervalUnion& other) const;

  // Finite form only; throws std::logic_error otherwise.
  const std::vector<double>& points() const;
  // Interval form (finite sets are representable too via degenerate components).
  IntervalUnion intervals() const;

  // Number of elements when finite, nullopt for a genuine continuum.
  std::optional<std::size_t> size() const;

  // Deterministic element used as a solver start or search seed: the smallest
  // element when one exists, otherwise the midpoint of the first component.
  std::optional<double> representative() const;

  std::string to_string() const;

  bool operator==(const PointSet&) const = default;

 private:
  bool finite_;
  std::vector<double> pts_;
  IntervalUnion ivals_;
};

} // namespace relfix
