#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace relfix {

// Outcome of a hypothesis check.
//
//   Holds        - decided exactly (finite enumeration or a decision rule)
//   HoldsSampled - no violation found under a stated sampling budget
//   Fails        - a concrete witness violates the property; replaying the
//                  witness against the defining predicate reproduces it
//   Unknown      - neither certified nor refuted (budget ran out, or the
//                  comparison landed inside the roundoff deadband)
enum class Grade { Holds, HoldsSampled, Fails, Unknown };

const char* to_string(Grade g);

// Evidence attached to a Fails verdict. `points` carries the offending
// element, pair, triple, or a sequence prefix (first entry = claimed limit
// for completeness counterexamples); lhs/rhs carry inequality sides when the
// violated predicate is an inequality.
struct Witness {
  std::vector<double> points;
  std::string description;
  std::optional<double> lhs;
  std::optional<double> rhs;
};

struct Verdict {
  Grade grade = Grade::Unknown;
  std::optional<Witness> witness;
  std::string note;

  bool passes() const { return grade == Grade::Holds || grade == Grade::HoldsSampled; }

  static Verdict holds(std::string note = {});
  static Verdict holds_sampled(std::string note = {});
  static Verdict fails(Witness w, std::string note = {});
  static Verdict unknown(std::string note = {});
};

// Worst verdict wins: Fails, then Unknown, then HoldsSampled, then Holds.
// Returns the first verdict of the dominating grade (witness preserved).
Verdict conjunction(std::span<const Verdict> vs);

// Best verdict wins, for either/or hypotheses: Holds, then HoldsSampled,
// then Unknown, then Fails.
Verdict disjunction(std::span<const Verdict> vs);

} // namespace relfix
