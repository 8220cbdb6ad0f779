#include "relfix/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "relfix/numeric.hpp"
#include "relfix/relation.hpp"

namespace relfix {

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> row_major)
    : n_(n), v_(std::move(row_major)) {
  if (n_ == 0) throw std::invalid_argument("distance matrix must be non-empty");
  if (v_.size() != n_ * n_) throw std::invalid_argument("distance matrix is not square");
  for (double d : v_)
    if (!std::isfinite(d)) throw std::invalid_argument("distance matrix entry is not finite");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (v_[i * n_ + j] != v_[j * n_ + i])
        throw std::invalid_argument("distance matrix storage is not symmetric");
}

MetricSpace MetricSpace::finite(std::vector<double> points) {
  if (points.empty()) throw std::invalid_argument("finite carrier must be non-empty");
  for (double p : points)
    if (!std::isfinite(p)) throw std::invalid_argument("carrier point is not finite");
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end())
    throw std::invalid_argument("duplicate carrier point");
  MetricSpace s;
  s.finite_ = true;
  s.pts_ = std::move(points);
  return s;
}

MetricSpace MetricSpace::finite(std::vector<double> points, DistanceMatrix metric) {
  if (metric.size() != points.size())
    throw std::invalid_argument("distance matrix size does not match carrier");
  // Keep matrix rows aligned with the sorted carrier.
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<double> sorted;
  sorted.reserve(points.size());
  for (std::size_t i : order) sorted.push_back(points[i]);
  std::vector<double> perm(points.size() * points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      perm[i * points.size() + j] = metric.at(order[i], order[j]);
  MetricSpace s = finite(std::move(sorted));
  s.matrix_ = DistanceMatrix(s.pts_.size(), std::move(perm));
  return s;
}

MetricSpace MetricSpace::intervals(IntervalUnion carrier) {
  if (carrier.empty()) throw std::invalid_argument("interval carrier must be non-empty");
  MetricSpace s;
  s.finite_ = false;
  s.ivals_ = std::move(carrier);
  return s;
}

const std::vector<double>& MetricSpace::points() const {
  if (!finite_) throw std::logic_error("carrier is not finite");
  return pts_;
}

const IntervalUnion& MetricSpace::carrier_intervals() const {
  if (finite_) throw std::logic_error("carrier is not an interval union");
  return ivals_;
}

bool MetricSpace::contains(double x) const {
  if (finite_) return std::binary_search(pts_.begin(), pts_.end(), x);
  return ivals_.contains(x);
}

double MetricSpace::distance(double x, double y) const {
  if (!contains(x) || !contains(y))
    throw std::invalid_argument("distance argument outside the carrier");
  if (!matrix_) return std::abs(x - y);
  auto ix = std::lower_bound(pts_.begin(), pts_.end(), x) - pts_.begin();
  auto iy = std::lower_bound(pts_.begin(), pts_.end(), y) - pts_.begin();
  return matrix_->at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
}

PointSet MetricSpace::carrier_set() const {
  if (finite_) return PointSet::finite(pts_);
  return PointSet::of(ivals_);
}

std::string MetricSpace::describe() const {
  if (finite_) {
    std::string s = PointSet::finite(pts_).to_string();
    s += matrix_ ? " with an explicit distance table" : " with the usual metric";
    return s;
  }
  return ivals_.to_string() + " with the usual metric";
}

Verdict verify_metric_axioms(const MetricSpace& space) {
  if (!space.has_matrix())
    return Verdict::holds("usual metric on the real line satisfies the axioms by rule");
  const auto& pts = space.points();
  const std::size_t n = pts.size();
  const DistanceMatrix& m = space.matrix();
  for (std::size_t i = 0; i < n; ++i)
    if (m.at(i, i) != 0)
      return Verdict::fails({{pts[i]}, "self-distance is non-zero", m.at(i, i), 0.0},
                            "d(x, x) must be 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !(m.at(i, j) > 0))
        return Verdict::fails({{pts[i], pts[j]}, "distance of distinct points is not positive",
                               m.at(i, j), 0.0},
                              "d(x, y) must be positive for x != y");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double lhs = m.at(i, k);
        double rhs = m.at(i, j) + m.at(j, k);
        if (lhs > rhs)
          return Verdict::fails({{pts[i], pts[j], pts[k]}, "triangle inequality violated",
                                 lhs, rhs},
                                "d(x, z) must not exceed d(x, y) + d(y, z)");
      }
  return Verdict::holds("exhaustive over " + std::to_string(n * n * n) + " triples");
}

namespace {

// Monotone sequence inside `c` escaping to its open endpoint; first entry is
// the claimed limit, the rest are the first few terms.
Witness escape_witness(const Interval& c, bool to_lo) {
  double target = to_lo ? c.lo : c.hi;
  double step = c.degenerate() ? 0.0 : std::min(c.width(), 1.0);
  Witness w;
  w.points.push_back(target);
  double scale = 0.5;
  for (int k = 0; k < 4; ++k) {
    w.points.push_back(to_lo ? c.lo + step * scale : c.hi - step * scale);
    scale /= 2;
  }
  w.description = std::string(to_lo ? "decreasing" : "increasing") +
                  " Cauchy sequence with limit " + format_number(target) +
                  " outside the carrier";
  return w;
}

} // namespace

Verdict is_complete(const MetricSpace& space) {
  if (space.finite_carrier())
    return Verdict::holds("finite metric spaces are complete");
  for (const Interval& c : space.carrier_intervals().components()) {
    if (!c.lo_closed) return Verdict::fails(escape_witness(c, true),
                                            "component " + c.to_string() + " is open at its infimum");
    if (!c.hi_closed) return Verdict::fails(escape_witness(c, false),
                                            "component " + c.to_string() + " is open at its supremum");
  }
  return Verdict::holds("every component is closed at both endpoints");
}

Verdict is_r_complete(const MetricSpace& space, const Relation& rel) {
  if (space.finite_carrier())
    return Verdict::holds("finite carrier: every Cauchy sequence is eventually constant");
  switch (rel.kind()) {
    case RelationKind::Universal: {
      Verdict v = is_complete(space);
      v.note = "universal relation: relational completeness equals completeness; " + v.note;
      return v;
    }
    case RelationKind::PairList:
      return Verdict::holds(
          "preserving sequences stay in the finite support, hence are eventually constant");
    case RelationKind::Geq:
      for (const Interval& c : space.carrier_intervals().components())
        if (!c.lo_closed)
          return Verdict::fails(escape_witness(c, true),
                                "non-increasing Cauchy sequences can escape to the open "
                                "infimum of " + c.to_string());
      return Verdict::holds(
          "every component is left-closed, so non-increasing Cauchy sequences "
          "converge to attained infima");
    case RelationKind::Leq:
      for (const Interval& c : space.carrier_intervals().components())
        if (!c.hi_closed)
          return Verdict::fails(escape_witness(c, false),
                                "non-decreasing Cauchy sequences can escape to the open "
                                "supremum of " + c.to_string());
      return Verdict::holds(
          "every component is right-closed, so non-decreasing Cauchy sequences "
          "converge to attained suprema");
  }
  return Verdict::unknown("unhandled relation kind");
}

} // namespace relfix
