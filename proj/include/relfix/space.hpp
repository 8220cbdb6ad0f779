#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relfix/interval.hpp"
#include "relfix/point_set.hpp"
#include "relfix/verdict.hpp"

namespace relfix {

class Relation;

// Explicit distance table for a finite carrier. Construction validates shape
// only (square, symmetric storage, finite non-negative entries); the metric
// axioms themselves are judged by verify_metric_axioms so that
// axiom-violating tables remain expressible for negative tests.
class DistanceMatrix {
 public:
  DistanceMatrix(std::size_t n, std::vector<double> row_major);

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }

  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<double> v_;
};

// A carrier plus its metric: either a finite point list (usual |x-y| metric
// or an explicit matrix) or a finite union of intervals with the usual
// metric. Immutable after construction.
class MetricSpace {
 public:
  static MetricSpace finite(std::vector<double> points);
  static MetricSpace finite(std::vector<double> points, DistanceMatrix metric);
  static MetricSpace intervals(IntervalUnion carrier);

  bool finite_carrier() const { return finite_; }
  bool has_matrix() const { return matrix_.has_value(); }
  const std::vector<double>& points() const; // finite carriers only
  const IntervalUnion& carrier_intervals() const;
  const DistanceMatrix& matrix() const { return *matrix_; }

  bool contains(double x) const;
  double distance(double x, double y) const; // throws if either point is outside
  PointSet carrier_set() const;

  std::string describe() const;

  bool operator==(const MetricSpace&) const = default;

 private:
  MetricSpace() = default;
  bool finite_ = false;
  std::vector<double> pts_;
  IntervalUnion ivals_;
  std::optional<DistanceMatrix> matrix_;
};

// Exhaustive axiom check for matrix metrics (zero diagonal, symmetry,
// positivity off the diagonal, triangle inequality over all triples);
// usual-metric carriers hold by rule.
Verdict verify_metric_axioms(const MetricSpace& space);

// Metric completeness. Decidable for both carriers: finite spaces are
// complete; an interval union is complete iff every component is closed at
// both endpoints. Fails carries a Cauchy sequence escaping to the open
// endpoint (first witness point is the claimed limit).
Verdict is_complete(const MetricSpace& space);

// Completeness along relation-preserving Cauchy sequences. Decision rules:
//   Universal -> is_complete;  PairList -> Holds (preserving sequences live in
//   the finite support, hence are eventually constant);  Geq on intervals ->
//   every component left-closed (non-increasing sequences converge to
//   component infima);  Leq -> mirror image;  finite carriers -> Holds.
Verdict is_r_complete(const MetricSpace& space, const Relation& rel);

} // namespace relfix
