#include "relfix/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "relfix/numeric.hpp"

namespace relfix {

Interval Interval::make(double lo, double hi, bool lo_closed, bool hi_closed) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("interval endpoints must be finite");
  if (lo > hi) throw std::invalid_argument("interval has lo > hi");
  if (lo == hi && !(lo_closed && hi_closed))
    throw std::invalid_argument("degenerate interval must be closed on both sides");
  return Interval{lo, hi, lo_closed, hi_closed};
}

bool Interval::contains(double x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

std::string Interval::to_string() const {
  std::string s;
  s += lo_closed ? '[' : '(';
  s += format_number(lo);
  s += ", ";
  s += format_number(hi);
  s += hi_closed ? ']' : ')';
  return s;
}

namespace {

// Overlapping, or touching with the shared endpoint present in either part.
bool merges_with(const Interval& a, const Interval& b) { // requires a.lo <= b.lo order
  if (b.lo < a.hi) return true;
  if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
  return false;
}

} // namespace

IntervalUnion::IntervalUnion(std::vector<Interval> components) : comps_(std::move(components)) {
  std::sort(comps_.begin(), comps_.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.lo_closed != b.lo_closed) return a.lo_closed; // closed end first
    if (a.hi != b.hi) return a.hi < b.hi;
    return a.hi_closed && !b.hi_closed;
  });
  std::vector<Interval> merged;
  for (const Interval& c : comps_) {
    if (merged.empty() || !merges_with(merged.back(), c)) {
      merged.push_back(c);
      continue;
    }
    Interval& m = merged.back();
    if (c.lo == m.lo) m.lo_closed = m.lo_closed || c.lo_closed;
    if (c.hi > m.hi) {
      m.hi = c.hi;
      m.hi_closed = c.hi_closed;
    } else if (c.hi == m.hi) {
      m.hi_closed = m.hi_closed || c.hi_closed;
    }
  }
  comps_ = std::move(merged);
}

bool IntervalUnion::contains(double x) const {
  for (const Interval& c : comps_) {
    if (x < c.lo) return false;
    if (c.contains(x)) return true;
  }
  return false;
}

bool IntervalUnion::all_degenerate() const {
  for (const Interval& c : comps_)
    if (!c.degenerate()) return false;
  return !comps_.empty();
}

bool IntervalUnion::subset_of(const IntervalUnion& other) const {
  // Components of a normalized union are separated, so each component of
  // *this must fit inside a single component of `other`.
  for (const Interval& a : comps_) {
    bool covered = false;
    for (const Interval& b : other.comps_) {
      bool lo_ok = b.lo < a.lo || (b.lo == a.lo && (b.lo_closed || !a.lo_closed));
      bool hi_ok = b.hi > a.hi || (b.hi == a.hi && (b.hi_closed || !a.hi_closed));
      if (lo_ok && hi_ok) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

double IntervalUnion::inf() const {
  if (comps_.empty()) throw std::logic_error("inf of empty union");
  return comps_.front().lo;
}

double IntervalUnion::sup() const {
  if (comps_.empty()) throw std::logic_error("sup of empty union");
  return comps_.back().hi;
}

std::string IntervalUnion::to_string() const {
  if (comps_.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) s += " ∪ ";
    s += comps_[i].to_string();
  }
  return s;
}

} // namespace relfix
