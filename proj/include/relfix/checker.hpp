#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relfix/contraction.hpp"
#include "relfix/solver.hpp"
#include "relfix/verdict.hpp"

namespace relfix {

// Bundle catalog. Each id names a fixed slate of hypothesis slots plus a
// conclusion kind; the id strings (T2.1, C2.8, ...) are the CLI vocabulary.
enum class TheoremId {
  T1_17, // four-term-free variant over the symmetric closure on a complete space
  T1_18, // linear bound over an order-style relation, path-connected uniqueness
  T2_1,  // existence: four-term envelope, relationally complete subspace
  C2_2,  // T2.1 specialized to Y = X
  C2_3,  // plain completeness / plain continuity variant
  C2_4,  // existence with the three-term envelope
  T2_5,  // C2.4 plus image-directedness: unique fixed point
  T2_7,  // C2.4 plus complete restriction to the image: unique fixed point
  C2_8,  // symmetric-closure variant, uniqueness via directed fixed-point set
  C2_10, // T2.5 with an integrable-gauge comparison function
  C3_1,  // linear three-term-envelope bound
  C3_3,  // weighted-sum bound a + 2b + 2c < 1
  C3_5,  // linear bound (Banach shape) under a relation
  C3_6,  // own-displacement average bound, k < 1/2
  C3_8,  // cross-displacement average bound, k < 1/2
  C3_10, // universal relation: unconditional three-term envelope
};

inline constexpr TheoremId kAllTheorems[] = {
    TheoremId::T1_17, TheoremId::T1_18, TheoremId::T2_1,  TheoremId::C2_2,
    TheoremId::C2_3,  TheoremId::C2_4,  TheoremId::T2_5,  TheoremId::T2_7,
    TheoremId::C2_8,  TheoremId::C2_10, TheoremId::C3_1,  TheoremId::C3_3,
    TheoremId::C3_5,  TheoremId::C3_6,  TheoremId::C3_8,  TheoremId::C3_10,
};

const char* theorem_name(TheoremId id);              // "T2.1"
std::optional<TheoremId> parse_theorem(std::string_view name);
ConditionTag required_condition(TheoremId id);
const char* theorem_summary(TheoremId id);
enum class ConclusionKind { Existence, ExistenceUnique };
ConclusionKind conclusion_kind(TheoremId id);

struct HypothesisSlot {
  std::string label;       // "(i)" ... "(vi)'"
  std::string description;
  Verdict verdict;
  bool uniqueness_role = false;
};

struct HypothesisReport {
  TheoremId id = TheoremId::T2_1;
  std::vector<HypothesisSlot> slots;
  Verdict overall;                    // conjunction of the slots
  std::optional<Verdict> conclusion;  // populated only when overall passes
  std::string first_failing;          // label of the first failing slot, if any
  std::string note;
};

// Evaluates every slot of the bundle against the instance. The instance's
// condition must match required_condition(id); use compare_theorems for
// automatic adaptation. Substitutions applied per bundle: symmetric closure
// for T1.17/C2.8, Y = X for C2.2, the universal relation for C3.10.
HypothesisReport check_hypotheses(const ContractionInstance& inst, TheoremId id);

// Validates a passing bundle's conclusion against the solver: existence
// needs a non-empty fixed-point set and a Picard orbit from the admissible
// witness landing in it; uniqueness additionally needs a singleton.
Verdict validate_conclusion(const ContractionInstance& inst, const HypothesisReport& report);

struct TheoremRow {
  TheoremId id = TheoremId::T2_1;
  std::optional<HypothesisReport> report; // absent when not applicable
  std::string na_reason;                  // why the row is Not-Applicable
  std::string adapted_condition;          // non-empty when the condition was derived
};

struct TheoremComparison {
  std::vector<TheoremRow> rows;
};

// Runs the requested bundles side by side. When a bundle's condition kind
// differs from the instance's, the condition is derived where meaningful
// (same comparison function across envelope shapes, linear constants by the
// exact supremum of ratios over checked pairs, constant-fold of weighted
// sums); otherwise the row is marked Not-Applicable.
TheoremComparison compare_theorems(const ContractionInstance& inst,
                                   std::span<const TheoremId> ids,
                                   std::size_t pair_budget = kDefaultPairBudget);

} // namespace relfix
