#include "relfix/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace relfix {

const char* to_string(ConditionTag tag) {
  switch (tag) {
    case ConditionTag::PhiM: return "PhiM";
    case ConditionTag::PhiN: return "PhiN";
    case ConditionTag::LambdaN: return "LambdaN";
    case ConditionTag::Banach: return "LinearBanach";
    case ConditionTag::Ciric: return "LinearCiric";
    case ConditionTag::RationalSum: return "RationalABC";
    case ConditionTag::Kannan: return "Kannan";
    case ConditionTag::Chatterjea: return "Chatterjea";
  }
  return "?";
}

Condition Condition::banach(double k) {
  if (!(k >= 0.0) || !(k < 1.0) || !std::isfinite(k))
    throw std::invalid_argument("k must lie in [0,1)");
  Condition c;
  c.tag = ConditionTag::Banach;
  c.k = k;
  return c;
}

Condition Condition::ciric(double k) {
  if (!(k >= 0.0) || !(k < 1.0) || !std::isfinite(k))
    throw std::invalid_argument("k must lie in [0,1)");
  Condition c;
  c.tag = ConditionTag::Ciric;
  c.k = k;
  return c;
}

Condition Condition::rational_sum(double a, double b, double c) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(c >= 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
      !std::isfinite(c))
    throw std::invalid_argument("coefficients must be non-negative");
  if (!(a + 2.0 * b + 2.0 * c < 1.0))
    throw std::invalid_argument("a + 2b + 2c must lie in [0,1)");
  Condition cond;
  cond.tag = ConditionTag::RationalSum;
  cond.a = a;
  cond.b = b;
  cond.c = c;
  return cond;
}

Condition Condition::kannan(double k) {
  if (!(k >= 0.0) || !(k < 0.5) || !std::isfinite(k))
    throw std::invalid_argument("k must lie in [0,1/2)");
  Condition c;
  c.tag = ConditionTag::Kannan;
  c.k = k;
  return c;
}

Condition Condition::chatterjea(double k) {
  if (!(k >= 0.0) || !(k < 0.5) || !std::isfinite(k))
    throw std::invalid_argument("k must lie in [0,1/2)");
  Condition c;
  c.tag = ConditionTag::Chatterjea;
  c.k = k;
  return c;
}

std::string Condition::describe() const {
  const std::string m4 = "max{d(x,y), d(x,fx), d(y,fy), [d(x,fy) + d(y,fx)]/2}";
  const std::string m3 = "max{d(x,y), [d(x,fx) + d(y,fy)]/2, [d(x,fy) + d(y,fx)]/2}";
  switch (tag) {
    case ConditionTag::PhiM: return "d(fx,fy) <= psi(" + m4 + ")";
    case ConditionTag::PhiN: return "d(fx,fy) <= psi(" + m3 + ")";
    case ConditionTag::LambdaN:
      return "d(fx,fy) <= psi(" + m3 + ") with an integrable-gauge psi";
    case ConditionTag::Banach:
      return "d(fx,fy) <= k d(x,y), k = " + format_number(k);
    case ConditionTag::Ciric:
      return "d(fx,fy) <= k " + m3 + ", k = " + format_number(k);
    case ConditionTag::RationalSum:
      return "d(fx,fy) <= a d(x,y) + b [d(x,fx) + d(y,fy)] + c [d(x,fy) + d(y,fx)], a = " +
             format_number(a) + ", b = " + format_number(b) + ", c = " + format_number(c);
    case ConditionTag::Kannan:
      return "d(fx,fy) <= k [d(x,fx) + d(y,fy)], k = " + format_number(k);
    case ConditionTag::Chatterjea:
      return "d(fx,fy) <= k [d(x,fy) + d(y,fx)], k = " + format_number(k);
  }
  return "?";
}

ContractionInstance make_instance(std::shared_ptr<const MetricSpace> space, Relation relation,
                                  SelfMap map, Condition condition,
                                  std::optional<ComparisonFunction> phi,
                                  std::shared_ptr<const MetricSpace> subspace) {
  if (!space) throw std::invalid_argument("instance needs a space");
  if (!(relation.carrier() == *space))
    throw std::invalid_argument("relation is defined on a different carrier than the space");
  if (!(map.carrier() == *space))
    throw std::invalid_argument("map is defined on a different carrier than the space");
  if (!subspace) subspace = space;
  if (!subspace->carrier_set().subset_of(space->carrier_set()))
    throw std::invalid_argument("subspace Y is not contained in the space X");
  if (!map.image().subset_of(subspace->carrier_set()))
    throw std::invalid_argument("the map's image is not contained in the subspace Y");
  if (condition.needs_phi() && !phi)
    throw std::invalid_argument("condition " + std::string(to_string(condition.tag)) +
                                " needs a comparison function");
  if (!condition.needs_phi() && phi)
    throw std::invalid_argument("condition " + std::string(to_string(condition.tag)) +
                                " does not take a comparison function");
  return ContractionInstance{std::move(space), std::move(subspace), std::move(relation),
                             std::move(map),   std::move(phi),      condition};
}

double ciric_max4(const MetricSpace& space, const SelfMap& f, double x, double y) {
  double fx = f.apply(x);
  double fy = f.apply(y);
  double cross = 0.5 * (space.distance(x, fy) + space.distance(y, fx));
  return std::max(std::max(space.distance(x, y), cross),
                  std::max(space.distance(x, fx), space.distance(y, fy)));
}

double ciric_max3(const MetricSpace& space, const SelfMap& f, double x, double y) {
  double fx = f.apply(x);
  double fy = f.apply(y);
  double own = 0.5 * (space.distance(x, fx) + space.distance(y, fy));
  double cross = 0.5 * (space.distance(x, fy) + space.distance(y, fx));
  return std::max(space.distance(x, y), std::max(own, cross));
}

namespace {

// Deterministic sample of the carrier: every finite point, or a stratified
// grid over each interval component (open endpoints nudged inward by a dyadic
// fraction of the width) together with map breakpoints and their one-sided
// neighbours.
std::vector<double> sample_points(const MetricSpace& space, const SelfMap& f,
                                  std::size_t target) {
  std::vector<double> pts;
  if (space.finite_carrier()) {
    pts = space.points();
  } else {
    const auto& comps = space.carrier_intervals().components();
    double total = 0.0;
    for (const Interval& c : comps) total += c.width();
    std::size_t want = std::max<std::size_t>(target, 2 * comps.size());
    for (const Interval& c : comps) {
      if (c.degenerate()) {
        pts.push_back(c.lo);
        continue;
      }
      std::size_t n = 3;
      if (total > 0.0)
        n = std::max<std::size_t>(
            3, static_cast<std::size_t>(std::llround(static_cast<double>(want) * c.width() /
                                                     total)));
      double nudge = c.width() * 0x1p-20;
      for (std::size_t i = 0; i < n; ++i) {
        double v = c.lo + c.width() * static_cast<double>(i) / static_cast<double>(n - 1);
        if (i == 0 && !c.lo_closed) v += nudge;
        if (i == n - 1 && !c.hi_closed) v -= nudge;
        pts.push_back(v);
      }
    }
    for (double b : f.breakpoints()) {
      double delta = std::max(1.0, std::abs(b)) * 0x1p-20;
      for (double v : {b - delta, b, b + delta})
        if (space.contains(v)) pts.push_back(v);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double condition_rhs(const MetricSpace& space, const SelfMap& f, const Condition& cond,
                     const std::optional<ComparisonFunction>& phi, double x, double y) {
  switch (cond.tag) {
    case ConditionTag::PhiM: return evaluate(*phi, ciric_max4(space, f, x, y));
    case ConditionTag::PhiN:
    case ConditionTag::LambdaN: return evaluate(*phi, ciric_max3(space, f, x, y));
    case ConditionTag::Banach: return cond.k * space.distance(x, y);
    case ConditionTag::Ciric: return cond.k * ciric_max3(space, f, x, y);
    case ConditionTag::RationalSum: {
      double fx = f.apply(x);
      double fy = f.apply(y);
      return cond.a * space.distance(x, y) +
             cond.b * (space.distance(x, fx) + space.distance(y, fy)) +
             cond.c * (space.distance(x, fy) + space.distance(y, fx));
    }
    case ConditionTag::Kannan: {
      double fx = f.apply(x);
      double fy = f.apply(y);
      return cond.k * (space.distance(x, fx) + space.distance(y, fy));
    }
    case ConditionTag::Chatterjea: {
      double fx = f.apply(x);
      double fy = f.apply(y);
      return cond.k * (space.distance(x, fy) + space.distance(y, fx));
    }
  }
  throw std::logic_error("unhandled condition tag");
}

} // namespace

ContractionOutcome check_contraction_as(const ContractionInstance& inst, const Relation& rel,
                                        const Condition& cond,
                                        const std::optional<ComparisonFunction>& phi,
                                        std::size_t pair_budget) {
  if (cond.needs_phi() && !phi)
    throw std::invalid_argument("condition " + std::string(to_string(cond.tag)) +
                                " needs a comparison function");
  const MetricSpace& space = inst.x();
  const SelfMap& f = inst.map;
  std::size_t checked = 0;
  std::optional<Witness> deadband;
  std::optional<Verdict> failure;

  auto probe = [&](double x, double y) {
    double lhs = space.distance(f.apply(x), f.apply(y));
    double rhs = condition_rhs(space, f, cond, phi, x, y);
    ++checked;
    double margin = lhs - rhs;
    if (margin <= kEpsCmp) return false;
    if (margin > kEps) {
      failure = Verdict::fails({{x, y}, "contraction inequality violated", lhs, rhs},
                               cond.describe() + " fails at (" + format_number(x) + ", " +
                                   format_number(y) + ")");
      return true;
    }
    if (!deadband)
      deadband = Witness{{x, y}, "inequality margin inside the roundoff deadband", lhs, rhs};
    return false;
  };

  bool exhaustive = false;
  if (rel.kind() == RelationKind::PairList) {
    exhaustive = true;
    for (const auto& [x, y] : rel.pairs())
      if (probe(x, y)) return {*failure, checked, exhaustive};
  } else if (space.finite_carrier() &&
             space.points().size() * space.points().size() <= pair_budget) {
    exhaustive = true;
    const auto& pts = space.points();
    for (double x : pts)
      for (double y : pts) {
        if (!related(rel, x, y)) continue;
        if (probe(x, y)) return {*failure, checked, exhaustive};
      }
  } else {
    std::size_t side = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::sqrt(static_cast<double>(pair_budget))));
    const auto pts = sample_points(space, f, side);
    for (double x : pts) {
      for (double y : pts) {
        if (checked >= pair_budget) break;
        if (!related(rel, x, y)) continue;
        if (probe(x, y)) return {*failure, checked, exhaustive};
      }
      if (checked >= pair_budget) break;
    }
  }

  if (deadband) {
    Verdict v = Verdict::unknown("an inequality margin landed between " +
                                 format_number(kEpsCmp) + " and " + format_number(kEps));
    v.witness = deadband;
    return {v, checked, exhaustive};
  }
  if (checked == 0) {
    Verdict v = Verdict::holds("no related pairs to test");
    return {v, checked, exhaustive};
  }
  if (exhaustive)
    return {Verdict::holds("exhaustive over " + std::to_string(checked) + " related pairs"),
            checked, true};
  return {Verdict::holds_sampled("no violation across " + std::to_string(checked) +
                                 " sampled related pairs"),
          checked, false};
}

ContractionOutcome check_contraction(const ContractionInstance& inst, std::size_t pair_budget) {
  return check_contraction_as(inst, inst.relation, inst.condition, inst.phi, pair_budget);
}

Verdict check_orbit_envelope_bound(const ContractionInstance& inst, std::size_t budget) {
  const MetricSpace& space = inst.x();
  const SelfMap& f = inst.map;
  auto pts = sample_points(space, f, std::min<std::size_t>(budget, 1024));
  bool exhaustive = space.finite_carrier();
  std::size_t checked = 0;
  std::optional<Witness> deadband;
  for (double x : pts) {
    if (checked >= budget) {
      exhaustive = false;
      break;
    }
    double fx = f.apply(x);
    double ffx = f.apply(fx);
    double lhs = ciric_max4(space, f, x, fx);
    double rhs = std::max(space.distance(x, fx), space.distance(fx, ffx));
    ++checked;
    double margin = lhs - rhs;
    if (margin <= kEpsCmp) continue;
    if (margin > kEps)
      return Verdict::fails({{x}, "orbit envelope exceeds the one-step displacement bound", lhs,
                             rhs},
                            "the pair (x, fx) envelope at x = " + format_number(x) +
                                " climbs above max{d(x,fx), d(fx,ffx)}");
    if (!deadband)
      deadband = Witness{{x}, "envelope margin inside the roundoff deadband", lhs, rhs};
  }
  if (deadband) {
    Verdict v = Verdict::unknown("an envelope margin landed inside the roundoff deadband");
    v.witness = deadband;
    return v;
  }
  if (exhaustive)
    return Verdict::holds("exhaustive over " + std::to_string(checked) + " carrier points");
  return Verdict::holds_sampled("no violation across " + std::to_string(checked) +
                                " sampled points");
}

Verdict check_closure_agreement(const ContractionInstance& inst, std::size_t pair_budget) {
  ContractionOutcome restricted = check_contraction(inst, pair_budget);
  ContractionOutcome closed = check_contraction_as(inst, symmetric_closure(inst.relation),
                                                   inst.condition, inst.phi, pair_budget);
  bool agree = restricted.verdict.grade == closed.verdict.grade ||
               (restricted.verdict.passes() && closed.verdict.passes());
  if (!agree) {
    Witness w = closed.verdict.witness
                    ? *closed.verdict.witness
                    : restricted.verdict.witness.value_or(Witness{
                          {}, "verdict mismatch between relation and closure", {}, {}});
    return Verdict::fails(std::move(w),
                          "restricted check grades " +
                              std::string(to_string(restricted.verdict.grade)) +
                              " but the symmetric-closure check grades " +
                              std::string(to_string(closed.verdict.grade)));
  }
  std::string note = "restricted and symmetric-closure checks agree (" +
                     std::string(to_string(restricted.verdict.grade)) + ", " +
                     std::to_string(restricted.pairs_checked) + " and " +
                     std::to_string(closed.pairs_checked) + " pairs)";
  if (restricted.exhaustive && closed.exhaustive) return Verdict::holds(note);
  return Verdict::holds_sampled(note);
}

} // namespace relfix
