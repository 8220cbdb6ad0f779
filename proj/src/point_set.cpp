#include "relfix/point_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "relfix/numeric.hpp"

namespace relfix {

PointSet PointSet::finite(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  PointSet s;
  s.finite_ = true;
  s.pts_ = std::move(pts);
  return s;
}

PointSet PointSet::of(IntervalUnion u) {
  if (u.empty() || u.all_degenerate()) {
    std::vector<double> pts;
    for (const Interval& c : u.components()) pts.push_back(c.lo);
    return finite(std::move(pts));
  }
  PointSet s;
  s.finite_ = false;
  s.ivals_ = std::move(u);
  return s;
}

bool PointSet::empty() const { return finite_ ? pts_.empty() : ivals_.empty(); }

bool PointSet::contains(double x) const {
  if (finite_) return std::binary_search(pts_.begin(), pts_.end(), x);
  return ivals_.contains(x);
}

const std::vector<double>& PointSet::points() const {
  if (!finite_) throw std::logic_error("point set is not finite");
  return pts_;
}

IntervalUnion PointSet::intervals() const {
  if (!finite_) return ivals_;
  std::vector<Interval> comps;
  comps.reserve(pts_.size());
  for (double p : pts_) comps.push_back(Interval::point(p));
  return IntervalUnion(std::move(comps));
}

bool PointSet::subset_of(const PointSet& other) const {
  if (finite_) {
    for (double p : pts_)
      if (!other.contains(p)) return false;
    return true;
  }
  if (other.finite_) return empty(); // a continuum never fits a finite set
  return ivals_.subset_of(other.ivals_);
}

bool PointSet::subset_of(const IntervalUnion& other) const {
  if (finite_) {
    for (double p : pts_)
      if (!other.contains(p)) return false;
    return true;
  }
  return ivals_.subset_of(other);
}

std::optional<std::size_t> PointSet::size() const {
  if (finite_) return pts_.size();
  return std::nullopt;
}

std::optional<double> PointSet::representative() const {
  if (empty()) return std::nullopt;
  if (finite_) return pts_.front();
  const Interval& first = ivals_.components().front();
  if (first.lo_closed) return first.lo;
  return (first.lo + first.hi) / 2;
}

std::string PointSet::to_string() const {
  if (finite_) {
    std::string s = "{";
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (i) s += ", ";
      s += format_number(pts_[i]);
    }
    s += "}";
    return s;
  }
  return ivals_.to_string();
}

} // namespace relfix
