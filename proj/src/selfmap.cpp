#include "relfix/selfmap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "relfix/numeric.hpp"

namespace relfix {

namespace {

// Exact image of an affine branch, endpoint openness included.
Interval piece_image(const AffinePiece& p) {
  if (p.slope == 0) return Interval::point(p.intercept);
  double a = p.eval(p.domain.lo);
  double b = p.eval(p.domain.hi);
  if (p.slope > 0) return Interval::make(a, b, p.domain.lo_closed, p.domain.hi_closed);
  return Interval::make(b, a, p.domain.hi_closed, p.domain.lo_closed);
}

// Smallest value an affine branch attains (or approaches) on its domain, and
// likewise the largest; attainment does not matter for the junction ordering
// test, only the bound itself.
double piece_low(const AffinePiece& p) {
  return p.slope >= 0 ? p.eval(p.domain.lo) : p.eval(p.domain.hi);
}
double piece_high(const AffinePiece& p) {
  return p.slope >= 0 ? p.eval(p.domain.hi) : p.eval(p.domain.lo);
}

// A point of the domain, backed off from open endpoints; prefer ones where
// the branch value is above (want_high) or below the given bound.
double representable_point(const Interval& d, bool from_hi) {
  if (d.degenerate()) return d.lo;
  double q = d.width() / 4;
  if (from_hi) return d.hi_closed ? d.hi : d.hi - q;
  return d.lo_closed ? d.lo : d.lo + q;
}

} // namespace

SelfMap SelfMap::build_piecewise(std::shared_ptr<const MetricSpace> carrier,
                                 std::vector<AffinePiece> pieces, bool check_image) {
  if (!carrier) throw std::invalid_argument("self-map needs a carrier");
  if (carrier->finite_carrier())
    throw std::invalid_argument("piecewise form requires an interval carrier");
  if (pieces.empty()) throw std::invalid_argument("piecewise map needs at least one piece");
  for (const AffinePiece& p : pieces)
    if (!std::isfinite(p.slope) || !std::isfinite(p.intercept))
      throw std::invalid_argument("piece coefficients must be finite");
  std::sort(pieces.begin(), pieces.end(), [](const AffinePiece& a, const AffinePiece& b) {
    if (a.domain.lo != b.domain.lo) return a.domain.lo < b.domain.lo;
    return a.domain.lo_closed && !b.domain.lo_closed;
  });
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    const Interval& a = pieces[i].domain;
    const Interval& b = pieces[i + 1].domain;
    bool disjoint = a.hi < b.lo || (a.hi == b.lo && !(a.hi_closed && b.lo_closed));
    if (!disjoint) throw std::invalid_argument("piece domains overlap");
  }
  std::vector<Interval> domains;
  domains.reserve(pieces.size());
  for (const AffinePiece& p : pieces) domains.push_back(p.domain);
  if (IntervalUnion(std::move(domains)) != carrier->carrier_intervals())
    throw std::invalid_argument("piece domains do not partition the carrier");
  if (check_image) {
    for (const AffinePiece& p : pieces)
      if (!IntervalUnion({piece_image(p)}).subset_of(carrier->carrier_intervals()))
        throw std::invalid_argument("map image leaves the carrier on piece " +
                                    p.domain.to_string());
  }
  SelfMap f;
  f.carrier_ = std::move(carrier);
  f.pieces_ = std::move(pieces);
  return f;
}

SelfMap SelfMap::build_table(std::shared_ptr<const MetricSpace> carrier,
                             std::vector<std::pair<double, double>> entries, bool check_image) {
  if (!carrier) throw std::invalid_argument("self-map needs a carrier");
  if (!carrier->finite_carrier())
    throw std::invalid_argument("table form requires a finite carrier");
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i + 1 < entries.size(); ++i)
    if (entries[i].first == entries[i + 1].first)
      throw std::invalid_argument("duplicate table key");
  const auto& pts = carrier->points();
  if (entries.size() != pts.size())
    throw std::invalid_argument("table must cover the carrier exactly");
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (entries[i].first != pts[i])
      throw std::invalid_argument("table key " + format_number(entries[i].first) +
                                  " is not a carrier point");
  if (check_image) {
    for (const auto& [x, fx] : entries)
      if (!carrier->contains(fx))
        throw std::invalid_argument("table value " + format_number(fx) +
                                    " leaves the carrier");
  }
  SelfMap f;
  f.carrier_ = std::move(carrier);
  f.table_ = std::move(entries);
  return f;
}

SelfMap SelfMap::piecewise(std::shared_ptr<const MetricSpace> carrier,
                           std::vector<AffinePiece> pieces) {
  return build_piecewise(std::move(carrier), std::move(pieces), true);
}

SelfMap SelfMap::table(std::shared_ptr<const MetricSpace> carrier,
                       std::vector<std::pair<double, double>> entries) {
  return build_table(std::move(carrier), std::move(entries), true);
}

SelfMap SelfMap::piecewise_unchecked(std::shared_ptr<const MetricSpace> carrier,
                                     std::vector<AffinePiece> pieces) {
  return build_piecewise(std::move(carrier), std::move(pieces), false);
}

SelfMap SelfMap::table_unchecked(std::shared_ptr<const MetricSpace> carrier,
                                 std::vector<std::pair<double, double>> entries) {
  return build_table(std::move(carrier), std::move(entries), false);
}

double SelfMap::apply(double x) const {
  if (is_table()) {
    auto it = std::lower_bound(table_.begin(), table_.end(), x,
                               [](const auto& e, double v) { return e.first < v; });
    if (it == table_.end() || it->first != x)
      throw std::invalid_argument("point " + format_number(x) + " outside the table");
    return it->second;
  }
  for (const AffinePiece& p : pieces_)
    if (p.domain.contains(x)) return p.eval(x);
  throw std::invalid_argument("point " + format_number(x) + " outside every piece domain");
}

PointSet SelfMap::image() const {
  if (is_table()) {
    std::vector<double> vals;
    vals.reserve(table_.size());
    for (const auto& [x, fx] : table_) vals.push_back(fx);
    return PointSet::finite(std::move(vals));
  }
  std::vector<Interval> images;
  images.reserve(pieces_.size());
  for (const AffinePiece& p : pieces_) images.push_back(piece_image(p));
  return PointSet::of(IntervalUnion(std::move(images)));
}

std::vector<double> SelfMap::breakpoints() const {
  std::vector<double> bs;
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
    if (pieces_[i].domain.hi == pieces_[i + 1].domain.lo)
      bs.push_back(pieces_[i].domain.hi);
  return bs;
}

Verdict SelfMap::nondecreasing() const {
  if (is_table()) {
    for (std::size_t i = 0; i + 1 < table_.size(); ++i)
      if (table_[i].second > table_[i + 1].second)
        return Verdict::fails({{table_[i + 1].first, table_[i].first},
                               "adjacent carrier points with inverted images",
                               table_[i + 1].second, table_[i].second},
                              "value steps down from " + format_number(table_[i].first) +
                                  " to " + format_number(table_[i + 1].first));
    return Verdict::holds("table values are non-decreasing across the sorted carrier");
  }
  for (const AffinePiece& p : pieces_) {
    if (p.slope < 0 && !p.domain.degenerate()) {
      double hi = representable_point(p.domain, false);
      double lo = representable_point(p.domain, true);
      return Verdict::fails({{hi, lo}, "negative slope inside a piece", p.eval(hi), p.eval(lo)},
                            "piece on " + p.domain.to_string() + " has slope " +
                                format_number(p.slope));
    }
  }
  // All pieces individually non-decreasing; check ordering across pieces.
  double running_high = piece_high(pieces_.front());
  std::size_t high_idx = 0;
  for (std::size_t j = 1; j < pieces_.size(); ++j) {
    double low_j = piece_low(pieces_[j]);
    if (running_high > low_j) {
      // Values near the top of piece high_idx exceed values near the bottom
      // of piece j; pick exact points realizing the inversion.
      const AffinePiece& hp = pieces_[high_idx];
      const AffinePiece& lp = pieces_[j];
      double gap = running_high - low_j;
      double y = representable_point(hp.domain, hp.slope >= 0);
      double x = representable_point(lp.domain, lp.slope < 0);
      // Back off open endpoints until the inversion is realized (it must be,
      // since the branch values approach the bounds linearly).
      double qy = hp.domain.width() / 4, qx = lp.domain.width() / 4;
      for (int guard = 0; guard < 200 && hp.eval(y) <= lp.eval(x); ++guard) {
        qy /= 2;
        qx /= 2;
        if (!hp.domain.degenerate())
          y = hp.slope >= 0 ? (hp.domain.hi_closed ? hp.domain.hi : hp.domain.hi - qy)
                            : (hp.domain.lo_closed ? hp.domain.lo : hp.domain.lo + qy);
        if (!lp.domain.degenerate())
          x = lp.slope >= 0 ? (lp.domain.lo_closed ? lp.domain.lo : lp.domain.lo + qx)
                            : (lp.domain.hi_closed ? lp.domain.hi : lp.domain.hi - qx);
      }
      return Verdict::fails({{x, y}, "image steps down across pieces", lp.eval(x), hp.eval(y)},
                            "piece values drop by " + format_number(gap) + " entering " +
                                lp.domain.to_string());
    }
    if (piece_high(pieces_[j]) >= running_high) {
      running_high = piece_high(pieces_[j]);
      high_idx = j;
    }
  }
  return Verdict::holds("every piece has non-negative slope and junction values never step down");
}

Verdict SelfMap::junction_continuity(bool need_left, bool need_right) const {
  if (is_table())
    return Verdict::holds("finite carrier is discrete; convergent sequences are eventually constant");
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const AffinePiece& a = pieces_[i];
    const AffinePiece& b = pieces_[i + 1];
    if (a.domain.hi != b.domain.lo) continue;        // separated by a carrier gap
    if (!a.domain.hi_closed && !b.domain.lo_closed) continue; // junction point not in carrier
    double at = a.domain.hi;
    double left_value = a.eval(at);
    double right_value = b.eval(at);
    if (left_value == right_value) continue;
    bool value_on_left = a.domain.hi_closed;
    // One-sided limits: from the left the branch tends to left_value, from
    // the right to right_value; f(at) equals whichever side owns the point.
    bool left_ok = value_on_left || left_value == right_value;
    bool right_ok = !value_on_left || left_value == right_value;
    if ((need_left && !left_ok) || (need_right && !right_ok))
      return Verdict::fails({{at}, "jump at a junction point", left_value, right_value},
                            "map jumps from " + format_number(left_value) + " to " +
                                format_number(right_value) + " at " + format_number(at));
  }
  std::string which = need_left && need_right ? "two-sided" : (need_left ? "left" : "right");
  return Verdict::holds("affine branches with " + which + "-continuous junction values");
}

Verdict SelfMap::right_continuous() const { return junction_continuity(false, true); }
Verdict SelfMap::left_continuous() const { return junction_continuity(true, false); }
Verdict SelfMap::continuous() const { return junction_continuity(true, true); }

std::string SelfMap::describe() const {
  if (is_table()) {
    std::string s = "table {";
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (i) s += ", ";
      s += format_number(table_[i].first) + " -> " + format_number(table_[i].second);
    }
    s += "}";
    return s;
  }
  std::string s = std::to_string(pieces_.size()) + " affine piece" +
                  (pieces_.size() == 1 ? "" : "s");
  auto bs = breakpoints();
  if (!bs.empty()) {
    s += ", junctions at ";
    for (std::size_t i = 0; i < bs.size(); ++i) {
      if (i) s += ", ";
      s += format_number(bs[i]);
    }
  }
  return s;
}

} // namespace relfix
