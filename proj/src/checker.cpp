#include "relfix/checker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relfix/numeric.hpp"

namespace relfix {

namespace {

enum class RelSub { None, SymmetricClosure, Universal };
enum class CompletenessOn { SubspaceRelational, WholeRelational, WholePlain, SubspacePlain };
enum class SlotSix { None, ImageDirected, CompleteRestriction, FixedSetDirected, FixedPointChains };

struct BundleTraits {
  RelSub sub = RelSub::None;
  CompletenessOn comp = CompletenessOn::SubspaceRelational;
  // Slot (iv): continuity-or-self-closed disjunction by default. T1.17 keeps
  // only the self-closedness (regularity) half; C2.3 swaps relational
  // continuity for plain two-sided continuity.
  bool regularity_only = false;
  bool plain_continuity = false;
  SlotSix six = SlotSix::None;
};

BundleTraits traits_for(TheoremId id) {
  BundleTraits t;
  switch (id) {
    case TheoremId::T1_17:
      t.sub = RelSub::SymmetricClosure;
      t.comp = CompletenessOn::WholePlain;
      t.regularity_only = true;
      t.six = SlotSix::FixedSetDirected;
      break;
    case TheoremId::T1_18:
      t.six = SlotSix::FixedPointChains;
      break;
    case TheoremId::T2_1:
    case TheoremId::C2_4:
      break;
    case TheoremId::C2_2:
      t.comp = CompletenessOn::WholeRelational;
      break;
    case TheoremId::C2_3:
      t.comp = CompletenessOn::SubspacePlain;
      t.plain_continuity = true;
      break;
    case TheoremId::T2_5:
    case TheoremId::C2_10:
    case TheoremId::C3_1:
    case TheoremId::C3_3:
    case TheoremId::C3_5:
    case TheoremId::C3_6:
    case TheoremId::C3_8:
      t.six = SlotSix::ImageDirected;
      break;
    case TheoremId::T2_7:
      t.six = SlotSix::CompleteRestriction;
      break;
    case TheoremId::C2_8:
      t.sub = RelSub::SymmetricClosure;
      t.six = SlotSix::FixedSetDirected;
      break;
    case TheoremId::C3_10:
      t.sub = RelSub::Universal;
      break;
  }
  return t;
}

Relation effective_relation(const ContractionInstance& inst, const BundleTraits& tr) {
  switch (tr.sub) {
    case RelSub::SymmetricClosure: return symmetric_closure(inst.relation);
    case RelSub::Universal: return Relation::universal(inst.space);
    case RelSub::None: break;
  }
  return inst.relation;
}

Verdict inclusion_chain(const ContractionInstance& inst) {
  if (!inst.map.image().subset_of(inst.y().carrier_set()))
    return Verdict::fails({{}, "the image of the map is not contained in the subspace"},
                          "image " + inst.map.image().to_string() + " escapes " +
                              inst.y().carrier_set().to_string());
  if (!inst.y().carrier_set().subset_of(inst.x().carrier_set()))
    return Verdict::fails({{}, "the subspace is not contained in the space"},
                          "subspace " + inst.y().carrier_set().to_string() + " escapes " +
                              inst.x().carrier_set().to_string());
  return Verdict::holds("image inside subspace inside space, verified exactly");
}

Verdict completeness_slot(const ContractionInstance& inst, const Relation& rel,
                          const BundleTraits& tr) {
  switch (tr.comp) {
    case CompletenessOn::WholePlain:
      return is_complete(inst.x());
    case CompletenessOn::WholeRelational:
      return is_r_complete(inst.x(), rel);
    case CompletenessOn::SubspacePlain: {
      Verdict vs[] = {is_complete(inst.y()), inclusion_chain(inst)};
      return conjunction(vs);
    }
    case CompletenessOn::SubspaceRelational: {
      Verdict vs[] = {is_r_complete(inst.y(), rel), inclusion_chain(inst)};
      return conjunction(vs);
    }
  }
  return Verdict::unknown("unhandled completeness flavor");
}

const char* completeness_description(const BundleTraits& tr) {
  switch (tr.comp) {
    case CompletenessOn::WholePlain: return "the whole space is complete";
    case CompletenessOn::WholeRelational: return "the whole space is relationally complete";
    case CompletenessOn::SubspacePlain:
      return "the subspace contains the image and is complete";
    case CompletenessOn::SubspaceRelational:
      return "the subspace contains the image and is relationally complete";
  }
  return "";
}

Verdict admissible_start_slot(const ContractionInstance& inst, const Relation& rel) {
  AdmissibleStarts st = compute_admissible_starts(inst.x(), rel, inst.map);
  if (st.set.empty())
    return Verdict::fails({{}, "no point is related to its own image"},
                          "the admissible-start set is empty");
  return Verdict::holds("admissible starts " + st.set.to_string() + ", computed exactly");
}

Verdict relational_continuity(const SelfMap& f, const Relation& rel) {
  switch (rel.kind()) {
    case RelationKind::Geq: {
      Verdict v = f.right_continuous();
      v.note = "non-increasing sequences approach their limits from the right; " + v.note;
      return v;
    }
    case RelationKind::Leq: {
      Verdict v = f.left_continuous();
      v.note = "non-decreasing sequences approach their limits from the left; " + v.note;
      return v;
    }
    case RelationKind::Universal:
      return f.continuous();
    case RelationKind::PairList:
      return Verdict::holds(
          "preserving sequences take finitely many values, so convergent ones are "
          "eventually constant");
  }
  return Verdict::unknown("unhandled relation kind");
}

Verdict continuity_slot(const ContractionInstance& inst, const Relation& rel,
                        const BundleTraits& tr, const MetricSpace& scope) {
  if (tr.regularity_only) return is_d_self_closed(rel, scope);
  Verdict left = tr.plain_continuity ? inst.map.continuous() : relational_continuity(inst.map, rel);
  Verdict vs[] = {left, is_d_self_closed(rel, scope)};
  return disjunction(vs);
}

const char* continuity_description(const BundleTraits& tr) {
  if (tr.regularity_only) return "the relation is d-self-closed (regularity)";
  if (tr.plain_continuity) return "the map is continuous, or the relation is d-self-closed";
  return "the map is relationally continuous, or the relation is d-self-closed";
}

std::string condition_shape(ConditionTag tag) {
  switch (tag) {
    case ConditionTag::PhiM:
      return "d(fx, fy) <= phi(four-term envelope) for an admissible comparison function";
    case ConditionTag::PhiN:
      return "d(fx, fy) <= phi(three-term envelope) for an admissible comparison function";
    case ConditionTag::LambdaN:
      return "d(fx, fy) <= psi(three-term envelope) for an integrable-gauge psi";
    case ConditionTag::Banach:
      return "d(fx, fy) <= k d(x, y) for a single k in [0, 1)";
    case ConditionTag::Ciric:
      return "d(fx, fy) <= k (three-term envelope) for a single k in [0, 1)";
    case ConditionTag::RationalSum:
      return "d(fx, fy) <= a d(x, y) + b [own displacements] + c [cross displacements], "
             "a + 2b + 2c < 1";
    case ConditionTag::Kannan:
      return "d(fx, fy) <= k [d(x, fx) + d(y, fy)] for a single k in [0, 1/2)";
    case ConditionTag::Chatterjea:
      return "d(fx, fy) <= k [d(x, fy) + d(y, fx)] for a single k in [0, 1/2)";
  }
  return "";
}

// Slot (v): the contraction inequality, with the comparison-function class
// check folded in. A decisive counterexample to the inequality wins; for the
// integrable-gauge bundle a failed class certification only downgrades the
// slot to Unknown, because the class is sufficient evidence, not necessary.
Verdict condition_slot(const ContractionInstance& inst, const Relation& rel,
                       const Condition& cond, const std::optional<ComparisonFunction>& phi,
                       std::size_t budget) {
  ContractionOutcome out = check_contraction_as(inst, rel, cond, phi, budget);
  if (!cond.needs_phi()) return out.verdict;
  if (out.verdict.grade == Grade::Fails) return out.verdict;

  // The gauge integral can only diverge at zero, so any fixed upper limit
  // decides membership; a small one gives the epsilon ladder full resolution
  // near the singularity.
  const bool lambda_mode = cond.tag == ConditionTag::LambdaN;
  PhiReport membership =
      lambda_mode ? check_lambda_membership(*phi, 0.25) : check_phi_membership(*phi);
  Verdict member = lambda_mode ? membership.overall_lambda() : membership.overall_phi();
  if (member.passes()) {
    Verdict vs[] = {out.verdict, member};
    return conjunction(vs);
  }
  if (lambda_mode) {
    Verdict v = Verdict::unknown(
        "the comparison function could not be certified in the integrable-gauge class (" +
        member.note + "); the inequality itself grades " +
        std::string(to_string(out.verdict.grade)));
    v.witness = member.witness;
    return v;
  }
  Verdict v = member;
  v.note = "comparison function outside the admissible class: " + member.note;
  return v;
}

Verdict image_directed_slot(const ContractionInstance& inst, const Relation& rel) {
  return is_directed(rel, inst.map.image(), /*use_symmetric=*/true);
}

Verdict fixed_set_directed_slot(const ContractionInstance& inst, const Relation& rel) {
  PointSet fixed = fixed_points(inst.map);
  if (fixed.empty())
    return Verdict::holds("the fixed-point set is empty, so directedness is vacuous");
  return is_directed(rel, fixed, /*use_symmetric=*/true);
}

Verdict fixed_point_chains_slot(const ContractionInstance& inst) {
  Relation closure = symmetric_closure(inst.relation);
  PointSet fixed = fixed_points(inst.map);
  if (!fixed.finite())
    return Verdict::unknown(
        "the fixed-point set is a continuum; the chain search covers only finite sets");
  const std::vector<double>& pts = fixed.points();
  if (pts.size() <= 1)
    return Verdict::holds("at most one fixed point, so there is nothing to join");
  std::size_t cap = default_path_cap(closure);
  std::size_t longest = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      std::optional<Path> p = find_path(closure, pts[i], pts[j], cap);
      if (!p)
        return Verdict::fails(
            {{pts[i], pts[j]}, "no chain in the symmetric closure joins these fixed points"},
            "chain search is complete up to length " + std::to_string(cap));
      longest = std::max(longest, p->length());
    }
  return Verdict::holds("every pair of fixed points is joined by a chain (longest length " +
                        std::to_string(longest) + ")");
}

HypothesisReport build_report(const ContractionInstance& inst, TheoremId id,
                              const Condition& cond, const std::optional<ComparisonFunction>& phi,
                              const std::optional<Verdict>& condition_override,
                              std::size_t budget) {
  BundleTraits tr = traits_for(id);
  Relation rel = effective_relation(inst, tr);
  const bool whole_scope =
      tr.comp == CompletenessOn::WholePlain || tr.comp == CompletenessOn::WholeRelational;
  const MetricSpace& scope = whole_scope ? inst.x() : inst.y();

  HypothesisReport rep;
  rep.id = id;

  rep.slots.push_back(
      {"(i)", completeness_description(tr), completeness_slot(inst, rel, tr), false});
  rep.slots.push_back(
      {"(ii)", "some point is related to its own image", admissible_start_slot(inst, rel), false});
  rep.slots.push_back(
      {"(iii)", "the relation is closed under the map", is_f_closed(rel, inst.map), false});
  rep.slots.push_back(
      {"(iv)", continuity_description(tr), continuity_slot(inst, rel, tr, scope), false});
  Verdict five = condition_override ? *condition_override
                                    : condition_slot(inst, rel, cond, phi, budget);
  rep.slots.push_back({cond.tag == ConditionTag::LambdaN ? "(v)'" : "(v)",
                       condition_shape(cond.tag), std::move(five), false});

  switch (tr.six) {
    case SlotSix::ImageDirected:
      rep.slots.push_back({"(vi)", "the image is directed under the symmetric closure",
                           image_directed_slot(inst, rel), true});
      break;
    case SlotSix::CompleteRestriction:
      rep.slots.push_back({"(vi)'", "the relation restricted to the image is complete",
                           is_complete_relation(rel, inst.map.image()), true});
      break;
    case SlotSix::FixedSetDirected:
      rep.slots.push_back({"(vi)", "the fixed-point set is directed",
                           fixed_set_directed_slot(inst, rel), true});
      break;
    case SlotSix::FixedPointChains:
      rep.slots.push_back({"(vi)", "every pair of fixed points is joined by a relational chain",
                           fixed_point_chains_slot(inst), true});
      break;
    case SlotSix::None:
      break;
  }

  std::vector<Verdict> verdicts;
  verdicts.reserve(rep.slots.size());
  for (const HypothesisSlot& s : rep.slots) verdicts.push_back(s.verdict);
  rep.overall = conjunction(verdicts);

  if (!rep.overall.passes()) {
    for (const HypothesisSlot& s : rep.slots)
      if (s.verdict.grade == rep.overall.grade) {
        rep.first_failing = s.label;
        break;
      }
  }

  std::vector<std::string> notes;
  if (tr.sub == RelSub::SymmetricClosure)
    notes.push_back("relation-side checks run against the symmetric closure");
  if (tr.sub == RelSub::Universal)
    notes.push_back("the universal relation replaces the instance's relation");
  if (tr.comp == CompletenessOn::WholeRelational)
    notes.push_back("the subspace is taken to be the whole space");
  if (id == TheoremId::C2_8)
    notes.push_back("the image-directed uniqueness variant grades " +
                    std::string(to_string(image_directed_slot(inst, rel).grade)));
  if (id == TheoremId::T1_18)
    notes.push_back(
        "chains are checked between fixed points only; the statement quantifies over all "
        "pairs, which is stronger");
  for (std::size_t i = 0; i < notes.size(); ++i) {
    if (i) rep.note += "; ";
    rep.note += notes[i];
  }

  if (rep.overall.passes()) rep.conclusion = validate_conclusion(inst, rep);
  return rep;
}

} // namespace

const char* theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::T1_17: return "T1.17";
    case TheoremId::T1_18: return "T1.18";
    case TheoremId::T2_1: return "T2.1";
    case TheoremId::C2_2: return "C2.2";
    case TheoremId::C2_3: return "C2.3";
    case TheoremId::C2_4: return "C2.4";
    case TheoremId::T2_5: return "T2.5";
    case TheoremId::T2_7: return "T2.7";
    case TheoremId::C2_8: return "C2.8";
    case TheoremId::C2_10: return "C2.10";
    case TheoremId::C3_1: return "C3.1";
    case TheoremId::C3_3: return "C3.3";
    case TheoremId::C3_5: return "C3.5";
    case TheoremId::C3_6: return "C3.6";
    case TheoremId::C3_8: return "C3.8";
    case TheoremId::C3_10: return "C3.10";
  }
  return "";
}

std::optional<TheoremId> parse_theorem(std::string_view name) {
  for (TheoremId id : kAllTheorems)
    if (name == theorem_name(id)) return id;
  return std::nullopt;
}

ConditionTag required_condition(TheoremId id) {
  switch (id) {
    case TheoremId::T1_17: return ConditionTag::PhiN;
    case TheoremId::T1_18: return ConditionTag::Banach;
    case TheoremId::T2_1:
    case TheoremId::C2_2:
    case TheoremId::C2_3: return ConditionTag::PhiM;
    case TheoremId::C2_4:
    case TheoremId::T2_5:
    case TheoremId::T2_7:
    case TheoremId::C2_8:
    case TheoremId::C3_10: return ConditionTag::PhiN;
    case TheoremId::C2_10: return ConditionTag::LambdaN;
    case TheoremId::C3_1: return ConditionTag::Ciric;
    case TheoremId::C3_3: return ConditionTag::RationalSum;
    case TheoremId::C3_5: return ConditionTag::Banach;
    case TheoremId::C3_6: return ConditionTag::Kannan;
    case TheoremId::C3_8: return ConditionTag::Chatterjea;
  }
  return ConditionTag::PhiM;
}

const char* theorem_summary(TheoremId id) {
  switch (id) {
    case TheoremId::T1_17:
      return "complete space, symmetric closure, three-term envelope; unique when the "
             "fixed-point set is directed";
    case TheoremId::T1_18:
      return "linear bound over the relation; unique when fixed points are chain-connected";
    case TheoremId::T2_1:
      return "existence from the four-term envelope on a relationally complete subspace";
    case TheoremId::C2_2:
      return "the four-term bundle with the subspace equal to the whole space";
    case TheoremId::C2_3:
      return "plain completeness and plain continuity variant of the four-term bundle";
    case TheoremId::C2_4:
      return "existence from the three-term envelope";
    case TheoremId::T2_5:
      return "three-term envelope; unique via image directedness";
    case TheoremId::T2_7:
      return "three-term envelope; unique via a complete restriction to the image";
    case TheoremId::C2_8:
      return "symmetric-closure three-term bundle; unique when the fixed-point set is directed";
    case TheoremId::C2_10:
      return "three-term envelope with an integrable-gauge comparison function; unique";
    case TheoremId::C3_1:
      return "linear three-term-envelope bound; unique via image directedness";
    case TheoremId::C3_3:
      return "weighted displacement-sum bound; unique via image directedness";
    case TheoremId::C3_5:
      return "linear bound over the relation; unique via image directedness";
    case TheoremId::C3_6:
      return "own-displacement average bound; unique via image directedness";
    case TheoremId::C3_8:
      return "cross-displacement average bound; unique via image directedness";
    case TheoremId::C3_10:
      return "universal relation: the three-term envelope with no relational side conditions; "
             "unique";
  }
  return "";
}

ConclusionKind conclusion_kind(TheoremId id) {
  switch (id) {
    case TheoremId::T2_1:
    case TheoremId::C2_2:
    case TheoremId::C2_3:
    case TheoremId::C2_4:
      return ConclusionKind::Existence;
    default:
      return ConclusionKind::ExistenceUnique;
  }
}

HypothesisReport check_hypotheses(const ContractionInstance& inst, TheoremId id) {
  if (inst.condition.tag != required_condition(id))
    throw std::invalid_argument(std::string("condition ") + to_string(inst.condition.tag) +
                                " does not fit " + theorem_name(id) + ", which needs " +
                                to_string(required_condition(id)));
  return build_report(inst, id, inst.condition, inst.phi, std::nullopt, kDefaultPairBudget);
}

Verdict validate_conclusion(const ContractionInstance& inst, const HypothesisReport& report) {
  if (!report.overall.passes())
    throw std::invalid_argument("conclusion validation requires a passing hypothesis bundle");
  PointSet fixed = fixed_points(inst.map);
  if (fixed.empty())
    return Verdict::fails({{}, "the fixed-point set is empty"},
                          "the bundle passes but the map has no fixed point");

  Relation rel = effective_relation(inst, traits_for(report.id));
  AdmissibleStarts st = compute_admissible_starts(inst.x(), rel, inst.map);
  if (!st.witness)
    return Verdict::fails({{}, "no admissible start to iterate"},
                          "the admissible-start set is empty despite a passing bundle");
  Orbit orbit = picard(inst.map, *st.witness);
  if (orbit.status != Orbit::Status::Converged || !orbit.limit || !fixed.contains(*orbit.limit))
    return Verdict::fails(
        {{*st.witness}, "the orbit from the admissible witness does not land on a fixed point"},
        "orbit status: " + std::string(orbit.status == Orbit::Status::Converged
                                           ? "converged outside the fixed-point set"
                                           : "did not converge"));

  std::string orbit_fact = "the orbit from " + format_number(*st.witness) + " reaches " +
                           format_number(*orbit.limit) + " in " +
                           std::to_string(orbit.iterations) + " steps";
  if (conclusion_kind(report.id) == ConclusionKind::ExistenceUnique) {
    bool singleton = fixed.size() && *fixed.size() == 1;
    if (!singleton) {
      Witness w;
      if (fixed.finite()) w.points = fixed.points();
      w.description = "the fixed-point set is not a singleton";
      return Verdict::fails(std::move(w), "fixed points " + fixed.to_string() +
                                              " contradict the uniqueness conclusion");
    }
    return Verdict::holds("unique fixed point " + fixed.to_string() + "; " + orbit_fact);
  }
  return Verdict::holds("fixed points " + fixed.to_string() + "; " + orbit_fact);
}

namespace {

struct DerivedCondition {
  std::optional<Condition> cond;
  std::optional<ComparisonFunction> phi;
  std::optional<Verdict> override_v; // a manufactured slot (v), for infeasible constants
  std::string text;                  // adapted_condition or na_reason
  bool not_applicable = false;
};

double linear_equivalent(const Condition& c) {
  switch (c.tag) {
    case ConditionTag::Banach:
    case ConditionTag::Ciric: return c.k;
    case ConditionTag::Kannan:
    case ConditionTag::Chatterjea: return 2 * c.k;
    case ConditionTag::RationalSum: return c.a + 2 * c.b + 2 * c.c;
    default: return 0;
  }
}

Condition shape_with(ConditionTag tag, double k) {
  switch (tag) {
    case ConditionTag::Banach: return Condition::banach(k);
    case ConditionTag::Ciric: return Condition::ciric(k);
    case ConditionTag::Kannan: return Condition::kannan(k);
    case ConditionTag::Chatterjea: return Condition::chatterjea(k);
    case ConditionTag::RationalSum: return Condition::rational_sum(k, 0, 0);
    case ConditionTag::PhiM: return Condition::phi_m();
    case ConditionTag::PhiN: return Condition::phi_n();
    case ConditionTag::LambdaN: return Condition::lambda_n();
  }
  return Condition::phi_m();
}

// Denominator of the target's ratio at a related pair; the admissible constant
// is the supremum of d(fx, fy) over it.
double ratio_denominator(ConditionTag tag, const MetricSpace& sp, const SelfMap& f, double x,
                         double y) {
  switch (tag) {
    case ConditionTag::Banach:
    case ConditionTag::RationalSum: return sp.distance(x, y);
    case ConditionTag::Ciric: return ciric_max3(sp, f, x, y);
    case ConditionTag::Kannan: return sp.distance(x, f.apply(x)) + sp.distance(y, f.apply(y));
    case ConditionTag::Chatterjea: return sp.distance(x, f.apply(y)) + sp.distance(y, f.apply(x));
    default: return 0;
  }
}

double constant_bound(ConditionTag tag) {
  return (tag == ConditionTag::Kannan || tag == ConditionTag::Chatterjea) ? 0.5 : 1.0;
}

std::vector<std::pair<double, double>> related_sample_pairs(const ContractionInstance& inst,
                                                            std::size_t budget,
                                                            bool& exhaustive) {
  const Relation& rel = inst.relation;
  exhaustive = true;
  if (rel.kind() == RelationKind::PairList) return rel.pairs();
  if (inst.x().finite_carrier()) {
    std::vector<std::pair<double, double>> out;
    const auto& pts = inst.x().points();
    for (double a : pts)
      for (double b : pts)
        if (related(rel, a, b)) out.push_back({a, b});
    return out;
  }
  exhaustive = false;
  std::vector<double> grid;
  const IntervalUnion& carrier = inst.x().carrier_intervals();
  std::size_t side = std::max<std::size_t>(
      8, static_cast<std::size_t>(std::sqrt(static_cast<double>(std::max<std::size_t>(budget, 4)))));
  double total = 0;
  for (const Interval& c : carrier.components()) total += std::max(c.width(), 0.0);
  for (const Interval& c : carrier.components()) {
    std::size_t n = 3;
    if (total > 0)
      n = std::max<std::size_t>(3, static_cast<std::size_t>(side * (c.width() / total)));
    double nudge = std::max(c.width(), 1.0) * 0x1p-20;
    for (std::size_t i = 0; i <= n; ++i) {
      double t = c.degenerate() ? c.lo : c.lo + (c.width() * static_cast<double>(i)) /
                                                    static_cast<double>(n);
      if (t == c.lo && !c.lo_closed) t += nudge;
      if (t == c.hi && !c.hi_closed) t -= nudge;
      if (carrier.contains(t)) grid.push_back(t);
    }
  }
  for (double b : inst.map.breakpoints()) {
    double nudge = std::max(1.0, std::abs(b)) * 0x1p-20;
    for (double t : {b, b - nudge, b + nudge})
      if (carrier.contains(t)) grid.push_back(t);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<std::pair<double, double>> out;
  for (double a : grid) {
    for (double b : grid) {
      if (out.size() >= budget) return out;
      if (related(rel, a, b)) out.push_back({a, b});
    }
  }
  return out;
}

DerivedCondition derive_condition(const ContractionInstance& inst, ConditionTag need,
                                  std::size_t budget) {
  DerivedCondition d;
  const Condition& have = inst.condition;

  Condition phi_target = shape_with(need, 0);
  if (phi_target.needs_phi()) {
    if (have.needs_phi()) {
      d.cond = phi_target;
      d.phi = inst.phi;
      d.text = "reused the instance's comparison function under the target envelope";
      return d;
    }
    double k = linear_equivalent(have);
    d.cond = phi_target;
    d.phi = ComparisonFunction::linear(k);
    d.text = "derived the linear comparison function with slope " + format_number(k) +
             " from the instance's constants";
    return d;
  }

  // Exact strengthening: a plain linear bound implies the envelope bound with
  // the same constant, and averaged-displacement bounds fold into it.
  if (need == ConditionTag::Ciric && !have.needs_phi()) {
    double k = linear_equivalent(have);
    if (k < 1) {
      d.cond = Condition::ciric(k);
      d.text = "folded the instance's constants into the envelope bound with k = " +
               format_number(k);
      return d;
    }
  }

  bool exhaustive = false;
  std::vector<std::pair<double, double>> pairs = related_sample_pairs(inst, budget, exhaustive);
  double sup = 0;
  std::pair<double, double> arg{0, 0};
  double arg_lhs = 0, arg_den = 0;
  bool seen = false;
  for (auto [a, b] : pairs) {
    double lhs = inst.x().distance(inst.map.apply(a), inst.map.apply(b));
    double den = ratio_denominator(need, inst.x(), inst.map, a, b);
    if (den <= 0) {
      if (lhs > 0) {
        d.override_v = Verdict::fails(
            {{a, b}, "positive displacement over a vanishing denominator", lhs, den},
            "no finite constant can satisfy the inequality at this pair");
        d.text = "no admissible constant exists for this shape";
        return d;
      }
      continue;
    }
    double r = lhs / den;
    if (!seen || r > sup) {
      sup = r;
      arg = {a, b};
      arg_lhs = lhs;
      arg_den = den;
      seen = true;
    }
  }
  double bound = constant_bound(need);
  if (seen && sup >= bound) {
    d.override_v = Verdict::fails(
        {{arg.first, arg.second},
         "the inequality needs a constant of at least " + format_number(sup) +
             ", but every admissible constant is below " + format_number(bound),
         arg_lhs, arg_den},
        exhaustive ? "exact supremum of ratios over " + std::to_string(pairs.size()) +
                         " related pairs"
                   : "supremum over " + std::to_string(pairs.size()) + " sampled related pairs");
    d.text = "no admissible constant exists: the ratio reaches " + format_number(sup) + " at (" +
             format_number(arg.first) + ", " + format_number(arg.second) + ")";
    return d;
  }
  double k = seen ? sup : 0;
  d.cond = shape_with(need, k);
  d.text = (exhaustive ? "derived k = " + format_number(k) + " as the exact supremum of ratios over "
                       : "derived k = " + format_number(k) + " as the supremum of ratios over ") +
           std::to_string(pairs.size()) + " related pairs";
  return d;
}

} // namespace

TheoremComparison compare_theorems(const ContractionInstance& inst,
                                   std::span<const TheoremId> ids, std::size_t pair_budget) {
  if (ids.empty()) throw std::invalid_argument("at least one theorem id is required");
  TheoremComparison table;
  for (TheoremId id : ids) {
    TheoremRow row;
    row.id = id;
    ConditionTag need = required_condition(id);
    if (need == inst.condition.tag) {
      row.report = build_report(inst, id, inst.condition, inst.phi, std::nullopt, pair_budget);
    } else {
      DerivedCondition d = derive_condition(inst, need, pair_budget);
      if (d.not_applicable) {
        row.na_reason = d.text;
      } else if (d.override_v) {
        Condition placeholder = shape_with(need, 0);
        row.report =
            build_report(inst, id, placeholder, inst.phi, d.override_v, pair_budget);
        row.adapted_condition = d.text;
      } else {
        row.report = build_report(inst, id, *d.cond, d.phi, std::nullopt, pair_budget);
        row.adapted_condition = d.text;
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

} // namespace relfix
