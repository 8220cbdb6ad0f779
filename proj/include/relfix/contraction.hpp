#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relfix/comparison.hpp"
#include "relfix/numeric.hpp"
#include "relfix/relation.hpp"
#include "relfix/selfmap.hpp"
#include "relfix/space.hpp"
#include "relfix/verdict.hpp"

namespace relfix {

// The contraction inequality's shape. PhiM/PhiN/LambdaN bound d(fx, fy) by a
// comparison function of a displacement envelope; the rest use explicit
// constants.
enum class ConditionTag {
  PhiM,       // d(fx,fy) <= phi(max{d, d(x,fx), d(y,fy), avg cross})
  PhiN,       // d(fx,fy) <= phi(max{d, avg own, avg cross})
  LambdaN,    // PhiN with an integrable-gauge psi
  Banach,     // d(fx,fy) <= k*d(x,y)
  Ciric,      // d(fx,fy) <= k*max{d, avg own, avg cross}
  RationalSum,// d(fx,fy) <= a*d + b*[d(x,fx)+d(y,fy)] + c*[d(x,fy)+d(y,fx)]
  Kannan,     // d(fx,fy) <= k*[d(x,fx)+d(y,fy)]
  Chatterjea, // d(fx,fy) <= k*[d(x,fy)+d(y,fx)]
};

const char* to_string(ConditionTag tag);

struct Condition {
  ConditionTag tag = ConditionTag::PhiM;
  double k = 0;                // Banach/Ciric (k < 1), Kannan/Chatterjea (k < 1/2)
  double a = 0, b = 0, c = 0;  // RationalSum, a + 2b + 2c < 1, all >= 0

  static Condition phi_m() { return {ConditionTag::PhiM}; }
  static Condition phi_n() { return {ConditionTag::PhiN}; }
  static Condition lambda_n() { return {ConditionTag::LambdaN}; }
  static Condition banach(double k);
  static Condition ciric(double k);
  static Condition rational_sum(double a, double b, double c);
  static Condition kannan(double k);
  static Condition chatterjea(double k);

  bool needs_phi() const {
    return tag == ConditionTag::PhiM || tag == ConditionTag::PhiN ||
           tag == ConditionTag::LambdaN;
  }

  std::string describe() const;

  bool operator==(const Condition&) const = default;
};

// A fully assembled problem instance: space X, distinguished subspace Y with
// f(X) subset of Y subset of X (validated exactly at construction), relation,
// piecewise self-map, contraction condition, and its comparison function when
// the condition needs one.
struct ContractionInstance {
  std::shared_ptr<const MetricSpace> space;    // X
  std::shared_ptr<const MetricSpace> subspace; // Y
  Relation relation;
  SelfMap map;
  std::optional<ComparisonFunction> phi;
  Condition condition;

  const MetricSpace& x() const { return *space; }
  const MetricSpace& y() const { return *subspace; }
};

// Validating assembly; subspace defaults to the whole space.
ContractionInstance make_instance(std::shared_ptr<const MetricSpace> space, Relation relation,
                                  SelfMap map, Condition condition,
                                  std::optional<ComparisonFunction> phi = std::nullopt,
                                  std::shared_ptr<const MetricSpace> subspace = nullptr);

// Displacement envelopes: the four-term maximum
//   max{d(x,y), d(x,fx), d(y,fy), (d(x,fy)+d(y,fx))/2}
// and the three-term variant with own-displacements averaged
//   max{d(x,y), (d(x,fx)+d(y,fy))/2, (d(x,fy)+d(y,fx))/2}.
// The three-term value never exceeds the four-term one.
double ciric_max4(const MetricSpace& space, const SelfMap& f, double x, double y);
double ciric_max3(const MetricSpace& space, const SelfMap& f, double x, double y);

struct ContractionOutcome {
  Verdict verdict;
  std::size_t pairs_checked = 0;
  bool exhaustive = false;
};

// Checks the instance's inequality over related pairs: exhaustively when the
// relation is an explicit pair list or the carrier is finite, otherwise over
// a deterministic stratified grid plus breakpoint-adjacent probes under
// pair_budget. Comparison policy: pass within kEpsCmp, fail beyond kEps,
// Unknown inside the deadband.
ContractionOutcome check_contraction(const ContractionInstance& inst,
                                     std::size_t pair_budget = kDefaultPairBudget);

// Same check with the relation/condition/phi substituted (used by theorem
// bundles that swap in the symmetric closure or a derived condition).
ContractionOutcome check_contraction_as(const ContractionInstance& inst, const Relation& rel,
                                        const Condition& cond,
                                        const std::optional<ComparisonFunction>& phi,
                                        std::size_t pair_budget = kDefaultPairBudget);

// Four-term envelope of the pair (x, fx) is bounded by
// max{d(x,fx), d(fx,ffx)}; checked over sampled or enumerated points.
Verdict check_orbit_envelope_bound(const ContractionInstance& inst,
                                   std::size_t budget = kDefaultPairBudget);

// The instance's inequality restricted to the relation agrees with the same
// inequality over the symmetric closure (the envelopes are symmetric in
// x and y, so the two quantifications are equivalent).
Verdict check_closure_agreement(const ContractionInstance& inst,
                                std::size_t pair_budget = kDefaultPairBudget);

} // namespace relfix
