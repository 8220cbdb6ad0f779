#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "relfix/point_set.hpp"
#include "relfix/space.hpp"
#include "relfix/verdict.hpp"

namespace relfix {

// One affine branch of a piecewise map, defined on `domain`.
struct AffinePiece {
  Interval domain;
  double slope = 0;
  double intercept = 0;

  double eval(double x) const { return slope * x + intercept; }

  bool operator==(const AffinePiece&) const = default;
};

// A self-map of a metric-space carrier.
//
// Interval carriers take a list of affine pieces whose domains partition the
// carrier exactly (validated at construction, endpoint openness included).
// Finite carriers take an explicit value table covering every point. The
// checked constructors also require the image to land inside the carrier;
// the *_unchecked variants skip that one requirement so escaping orbits can
// be exercised in negative tests.
class SelfMap {
 public:
  static SelfMap piecewise(std::shared_ptr<const MetricSpace> carrier,
                           std::vector<AffinePiece> pieces);
  static SelfMap table(std::shared_ptr<const MetricSpace> carrier,
                       std::vector<std::pair<double, double>> entries);
  static SelfMap piecewise_unchecked(std::shared_ptr<const MetricSpace> carrier,
                                     std::vector<AffinePiece> pieces);
  static SelfMap table_unchecked(std::shared_ptr<const MetricSpace> carrier,
                                 std::vector<std::pair<double, double>> entries);

  const MetricSpace& carrier() const { return *carrier_; }
  std::shared_ptr<const MetricSpace> carrier_ptr() const { return carrier_; }

  bool is_table() const { return !table_.empty(); }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const std::vector<std::pair<double, double>>& table_entries() const { return table_; }

  // Evaluates the map; throws std::invalid_argument when x lies outside the
  // piece domains / table keys.
  double apply(double x) const;

  // Exact image f(X) as a point set (per-piece interval images with endpoint
  // openness, or the table's value set).
  PointSet image() const;

  // Interior junction points between consecutive pieces (empty for tables).
  std::vector<double> breakpoints() const;

  // Exact global monotonicity check: every piece has slope >= 0 and piece
  // values never step down across junctions or gaps. Fails carries an
  // order-related pair (x, y) with x >= y but f(x) < f(y).
  Verdict nondecreasing() const;

  // One-sided / full continuity at junction points that belong to the
  // carrier; affine branches are continuous everywhere else, and finite
  // carriers are discrete, so these hold by rule there.
  Verdict right_continuous() const;
  Verdict left_continuous() const;
  Verdict continuous() const;

  std::string describe() const;

 private:
  SelfMap() = default;
  static SelfMap build_piecewise(std::shared_ptr<const MetricSpace> carrier,
                                 std::vector<AffinePiece> pieces, bool check_image);
  static SelfMap build_table(std::shared_ptr<const MetricSpace> carrier,
                             std::vector<std::pair<double, double>> entries, bool check_image);
  Verdict junction_continuity(bool need_left, bool need_right) const;

  std::shared_ptr<const MetricSpace> carrier_;
  std::vector<AffinePiece> pieces_;
  std::vector<std::pair<double, double>> table_;
};

} // namespace relfix
