#include "relfix/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relfix {

namespace {

// Threshold for the monotone-term divergence test: with non-increasing terms,
// a convergent series forces n*a_n -> 0, so n*a_n staying this large at the
// deepest checkpoint flags divergence.
constexpr double kDivergenceFloor = 1e-6;

} // namespace

ComparisonFunction ComparisonFunction::linear(double k) {
  if (!(k >= 0.0) || !(k < 1.0) || !std::isfinite(k))
    throw std::invalid_argument("linear comparison needs 0 <= k < 1");
  ComparisonFunction f;
  f.family_ = PhiFamily::Linear;
  f.k_ = k;
  return f;
}

ComparisonFunction ComparisonFunction::rational(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("rational comparison needs c > 0");
  ComparisonFunction f;
  f.family_ = PhiFamily::Rational;
  f.c_ = c;
  return f;
}

ComparisonFunction ComparisonFunction::table(
    std::vector<std::pair<double, double>> breakpoints) {
  if (breakpoints.empty()) throw std::invalid_argument("table comparison needs breakpoints");
  double prev_t = 0.0;
  double prev_v = 0.0;
  for (const auto& [t, v] : breakpoints) {
    if (!std::isfinite(t) || !std::isfinite(v))
      throw std::invalid_argument("table breakpoints must be finite");
    if (t <= prev_t)
      throw std::invalid_argument("table breakpoints must be strictly increasing and positive");
    if (v < prev_v) throw std::invalid_argument("table values must be non-decreasing");
    if (v < 0) throw std::invalid_argument("table values must be non-negative");
    prev_t = t;
    prev_v = v;
  }
  ComparisonFunction f;
  f.family_ = PhiFamily::Table;
  f.table_ = std::move(breakpoints);
  return f;
}

std::string ComparisonFunction::describe() const {
  switch (family_) {
    case PhiFamily::Linear: return "psi(t) = " + format_number(k_) + "*t";
    case PhiFamily::Rational: return "psi(t) = t/(" + format_number(c_) + " + t)";
    case PhiFamily::Table: {
      std::string s = "piecewise-linear through (0, 0)";
      for (const auto& [t, v] : table_)
        s += ", (" + format_number(t) + ", " + format_number(v) + ")";
      return s;
    }
  }
  return "?";
}

double evaluate(const ComparisonFunction& phi, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("comparison functions act on t >= 0");
  switch (phi.family()) {
    case PhiFamily::Linear: return phi.linear_k() * t;
    case PhiFamily::Rational: return t == 0.0 ? 0.0 : t / (phi.rational_c() + t);
    case PhiFamily::Table: {
      const auto& bp = phi.breakpoints();
      double ta = 0.0, va = 0.0;
      for (const auto& [tb, vb] : bp) {
        if (t <= tb) return va + (vb - va) * (t - ta) / (tb - ta);
        ta = tb;
        va = vb;
      }
      // Beyond the last breakpoint: extend the final segment's slope (the
      // single-breakpoint table extends the segment from the origin).
      double t0 = 0.0, v0 = 0.0;
      if (bp.size() >= 2) {
        t0 = bp[bp.size() - 2].first;
        v0 = bp[bp.size() - 2].second;
      }
      double slope = (bp.back().second - v0) / (bp.back().first - t0);
      return bp.back().second + slope * (t - bp.back().first);
    }
  }
  throw std::logic_error("unhandled comparison family");
}

double iterate(const ComparisonFunction& phi, std::size_t n, double t) {
  double v = t;
  for (std::size_t i = 0; i < n; ++i) v = evaluate(phi, v);
  return v;
}

std::vector<double> default_grid(std::optional<double> instance_scale) {
  std::vector<double> g{1e-3, 1e-2, 1e-1, 1.0, 10.0};
  if (instance_scale && *instance_scale > 0.0 && std::isfinite(*instance_scale))
    g.push_back(*instance_scale);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

namespace {

double table_extrapolation_slope(const ComparisonFunction& phi) {
  const auto& bp = phi.breakpoints();
  double t0 = 0.0, v0 = 0.0;
  if (bp.size() >= 2) {
    t0 = bp[bp.size() - 2].first;
    v0 = bp[bp.size() - 2].second;
  }
  return (bp.back().second - v0) / (bp.back().first - t0);
}

Verdict check_increasing(const ComparisonFunction& phi) {
  switch (phi.family()) {
    case PhiFamily::Linear:
      return Verdict::holds("slope " + format_number(phi.linear_k()) + " is non-negative");
    case PhiFamily::Rational:
      return Verdict::holds("t/(c + t) has derivative c/(c + t)^2 > 0");
    case PhiFamily::Table:
      return Verdict::holds("all segment slopes are non-negative by construction");
  }
  throw std::logic_error("unhandled comparison family");
}

// psi(t) < t for every t > 0, decided exactly per family.
Verdict check_below_identity(const ComparisonFunction& phi) {
  switch (phi.family()) {
    case PhiFamily::Linear:
      return Verdict::holds("k < 1 gives k*t < t for every t > 0");
    case PhiFamily::Rational: {
      double c = phi.rational_c();
      if (c >= 1.0)
        return Verdict::holds("t/(c + t) < t needs c + t > 1, true for every t > 0");
      double t = (1.0 - c) / 2.0;
      return Verdict::fails({{t}, "psi(t) >= t", evaluate(phi, t), t},
                            "c + t <= 1 on (0, " + format_number(1.0 - c) +
                                "], where t/(c + t) >= t");
    }
    case PhiFamily::Table: {
      for (const auto& [t, v] : phi.breakpoints())
        if (v >= t)
          return Verdict::fails({{t}, "psi(t) >= t", v, t},
                                "breakpoint value " + format_number(v) +
                                    " is not below its argument " + format_number(t));
      double s = table_extrapolation_slope(phi);
      if (s > 1.0) {
        auto [tm, vm] = phi.breakpoints().back();
        double crossing = tm + (tm - vm) / (s - 1.0);
        double t = crossing + 1.0;
        return Verdict::fails({{t}, "psi(t) >= t", evaluate(phi, t), t},
                              "extension slope " + format_number(s) +
                                  " overtakes the identity beyond t = " +
                                  format_number(crossing));
      }
      return Verdict::holds(
          "every breakpoint value sits below its argument and the extension slope is at most 1");
    }
  }
  throw std::logic_error("unhandled comparison family");
}

// Sampled series engine for one starting value: iterates a_n = psi^n(t).
Verdict check_summable_at(const ComparisonFunction& phi, double t, std::size_t terms) {
  if (t <= 0.0) return Verdict::holds("psi^n(0) = 0 identically");
  double a = t;
  double partial = 0.0;
  std::size_t depth = 4 * terms;
  for (std::size_t n = 1; n <= depth; ++n) {
    double next = evaluate(phi, a);
    if (next >= a && a > kEps)
      return Verdict::fails(
          {{t}, "iterate series terms stopped decreasing at index " + std::to_string(n), next,
           a},
          "psi is increasing, so a non-decreasing step pins every later term above " +
              format_number(a));
    a = next;
    partial += a;
    if (a <= kEps)
      return Verdict::holds_sampled("terms fell below " + format_number(kEps) + " at index " +
                                    std::to_string(n) + ", partial sum " +
                                    format_number(partial));
  }
  double indexed = static_cast<double>(depth) * a;
  if (indexed >= kDivergenceFloor)
    return Verdict::fails(
        {{t}, "monotone-term divergence: n*psi^n(t) stays above " +
                  format_number(kDivergenceFloor) + " at n = " + std::to_string(depth),
         indexed, kDivergenceFloor},
        "a convergent series with non-increasing terms forces n*a_n -> 0");
  return Verdict::unknown("series neither settled below tolerance nor flagged divergent within " +
                          std::to_string(depth) + " terms");
}

Verdict check_summable(const ComparisonFunction& phi, const std::vector<double>& grid,
                       std::size_t terms) {
  if (phi.family() == PhiFamily::Linear) {
    double k = phi.linear_k();
    return Verdict::holds("geometric series with ratio " + format_number(k) +
                          " sums to t*k/(1 - k)");
  }
  std::vector<Verdict> per_point;
  per_point.reserve(grid.size());
  for (double t : grid) per_point.push_back(check_summable_at(phi, t, terms));
  Verdict worst = conjunction(per_point);
  if (worst.passes())
    return Verdict::holds_sampled("series tail fell below tolerance at all " +
                                  std::to_string(grid.size()) + " grid points");
  return worst;
}

// Lower and upper strict bounds 0 < psi(t) < t on t > 0, decided exactly.
Verdict check_positive_below(const ComparisonFunction& phi) {
  switch (phi.family()) {
    case PhiFamily::Linear: {
      double k = phi.linear_k();
      if (k == 0.0)
        return Verdict::fails({{1.0}, "psi(t) = 0 is not strictly positive", 0.0, 1.0},
                              "zero slope collapses every t to 0");
      return Verdict::holds("0 < k*t < t for every t > 0 when 0 < k < 1");
    }
    case PhiFamily::Rational: {
      Verdict upper = check_below_identity(phi);
      if (!upper.passes()) return upper;
      return Verdict::holds("0 < t/(c + t) < t for every t > 0 when c >= 1");
    }
    case PhiFamily::Table: {
      const auto& [t1, v1] = phi.breakpoints().front();
      if (v1 == 0.0)
        return Verdict::fails({{t1}, "psi vanishes on the first segment", 0.0, t1},
                              "first breakpoint value 0 makes psi = 0 on (0, " +
                                  format_number(t1) + "]");
      Verdict upper = check_below_identity(phi);
      if (!upper.passes()) return upper;
      return Verdict::holds("positive first value and sub-identity breakpoints bound psi in (0, t)");
    }
  }
  throw std::logic_error("unhandled comparison family");
}

double gauge(const ComparisonFunction& phi, double t) {
  return t / (t - evaluate(phi, t));
}

Verdict check_gauge_decreasing(const ComparisonFunction& phi, double T,
                               const std::vector<double>& grid) {
  switch (phi.family()) {
    case PhiFamily::Linear: {
      double k = phi.linear_k();
      if (k > 0.0) {
        double g = 1.0 / (1.0 - k);
        return Verdict::fails({{T / 2.0, T}, "gauge is constant, not strictly decreasing", g, g},
                              "t/(t - k*t) = 1/(1 - k) for every t");
      }
      return Verdict::fails({{T / 2.0, T}, "gauge is constant, not strictly decreasing", 1.0, 1.0},
                            "t/(t - 0) = 1 for every t");
    }
    case PhiFamily::Rational:
      return Verdict::holds("gauge 1 + 1/(c + t - 1) is strictly decreasing for c >= 1");
    case PhiFamily::Table: {
      std::vector<double> pts;
      for (double t : grid)
        if (t > 0.0 && t <= T) pts.push_back(t);
      for (const auto& [t, v] : phi.breakpoints())
        if (t > 0.0 && t <= T) pts.push_back(t);
      for (int j = 1; j <= 8; ++j) pts.push_back(T * std::pow(2.0, -j));
      pts.push_back(T);
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double g0 = gauge(phi, pts[i]);
        double g1 = gauge(phi, pts[i + 1]);
        if (g0 <= g1)
          return Verdict::fails({{pts[i], pts[i + 1]}, "gauge does not strictly decrease", g0, g1},
                                "g(" + format_number(pts[i]) + ") = " + format_number(g0) +
                                    " against g(" + format_number(pts[i + 1]) + ") = " +
                                    format_number(g1));
      }
      return Verdict::holds_sampled("strictly decreasing across " + std::to_string(pts.size()) +
                                    " sample points in (0, " + format_number(T) + "]");
    }
  }
  throw std::logic_error("unhandled comparison family");
}

// Composite Simpson on [a, b] with panel doubling until relative stabilization.
double integrate(const ComparisonFunction& phi, double a, double b) {
  auto simpson = [&](std::size_t panels) {
    double h = (b - a) / static_cast<double>(panels);
    double sum = gauge(phi, a) + gauge(phi, b);
    for (std::size_t i = 1; i < panels; ++i)
      sum += (i % 2 ? 4.0 : 2.0) * gauge(phi, a + h * static_cast<double>(i));
    return sum * h / 3.0;
  };
  double prev = simpson(8);
  for (std::size_t panels = 16; panels <= (1u << 15); panels *= 2) {
    double cur = simpson(panels);
    if (std::abs(cur - prev) <= kQuadRelTol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

Verdict check_gauge_integrable(const ComparisonFunction& phi, double T,
                               std::size_t ladder_depth) {
  // Epsilon ladder: integrate over [T*2^-j, T] and watch the increments
  // Delta_j shrink. Geometric decay extrapolates to a finite tail; stalled
  // increments reproduce a log-type divergence.
  std::vector<double> increments;
  double integral = 0.0;
  double upper = T;
  for (std::size_t j = 1; j <= ladder_depth; ++j) {
    double lower = T * std::pow(2.0, -static_cast<double>(j));
    double delta = integrate(phi, lower, upper);
    increments.push_back(delta);
    integral += delta;
    upper = lower;
  }
  std::size_t window = 5;
  if (increments.size() < window + 1)
    return Verdict::unknown("ladder too shallow for the increment ratio test");
  std::vector<double> ratios;
  for (std::size_t i = increments.size() - window; i < increments.size(); ++i) {
    if (increments[i - 1] <= 0.0)
      return Verdict::holds_sampled("increments vanished; integral approximately " +
                                    format_number(integral));
    ratios.push_back(increments[i] / increments[i - 1]);
  }
  double rmax = *std::max_element(ratios.begin(), ratios.end());
  double rmin = *std::min_element(ratios.begin(), ratios.end());
  if (rmax <= 0.95) {
    double rbar = 0.0;
    for (double r : ratios) rbar += r;
    rbar /= static_cast<double>(ratios.size());
    double tail = increments.back() * rbar / (1.0 - rbar);
    if (tail <= kQuadRelTol * std::max(1.0, integral))
      return Verdict::holds_sampled("increments decay geometrically (mean ratio " +
                                    format_number(rbar) + "); integral approximately " +
                                    format_number(integral + tail));
    return Verdict::unknown("geometric tail estimate " + format_number(tail) +
                            " still above tolerance at ladder depth " +
                            std::to_string(ladder_depth));
  }
  if (rmin >= 0.98)
    return Verdict::fails(
        {{T}, "ladder increments stopped shrinking (ratios at least " + format_number(rmin) + ")",
         increments.back(), 0.0},
        "each halving of the lower limit adds a near-constant amount, the signature of a "
        "divergent integral");
  return Verdict::unknown("increment ratios between 0.95 and 0.98 are inconclusive at depth " +
                          std::to_string(ladder_depth));
}

} // namespace

Verdict PhiReport::overall_phi() const {
  Verdict vs[] = {increasing, summable, below_identity};
  return conjunction(vs);
}

Verdict PhiReport::overall_lambda() const {
  if (!positive || !gauge_decreasing || !gauge_integrable)
    return Verdict::unknown("integrable-gauge check was not run");
  std::vector<Verdict> vs{*positive, *gauge_decreasing, *gauge_integrable};
  if (cross_check) vs.push_back(*cross_check);
  return conjunction(vs);
}

PhiReport check_phi_membership(const ComparisonFunction& phi, std::vector<double> grid,
                               std::size_t terms) {
  PhiReport r;
  r.grid = grid.empty() ? default_grid() : std::move(grid);
  r.increasing = check_increasing(phi);
  r.below_identity = check_below_identity(phi);
  r.summable = check_summable(phi, r.grid, terms);
  return r;
}

PhiReport check_lambda_membership(const ComparisonFunction& phi, double T,
                                  std::size_t ladder_depth, std::vector<double> grid,
                                  std::size_t terms) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw std::invalid_argument("integrable-gauge check needs T > 0");
  PhiReport r = check_phi_membership(phi, std::move(grid), terms);
  r.positive = check_positive_below(phi);
  if (!r.positive->passes()) {
    r.gauge_decreasing =
        Verdict::unknown("gauge t/(t - psi(t)) is undefined where psi(t) >= t");
    r.gauge_integrable =
        Verdict::unknown("gauge t/(t - psi(t)) is undefined where psi(t) >= t");
    return r;
  }
  r.gauge_decreasing = check_gauge_decreasing(phi, T, r.grid);
  r.gauge_integrable = check_gauge_integrable(phi, T, ladder_depth);
  if (r.positive->passes() && r.gauge_decreasing->passes() && r.gauge_integrable->passes()) {
    if (r.summable.passes())
      r.cross_check = Verdict::holds_sampled(
          "class inclusion confirmed: the iterate series converges as well");
    else if (r.summable.grade == Grade::Unknown)
      r.cross_check = Verdict::unknown(
          "class inclusion unconfirmed: the series engine was inconclusive");
    else
      r.cross_check =
          Verdict::fails(r.summable.witness.value_or(Witness{{}, "series divergence", {}, {}}),
                         "class inclusion violated: the iterate series diverges");
  }
  return r;
}

} // namespace relfix
