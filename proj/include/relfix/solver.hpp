#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relfix/contraction.hpp"
#include "relfix/numeric.hpp"
#include "relfix/point_set.hpp"
#include "relfix/verdict.hpp"

namespace relfix {

// Picard orbit record. points[i+1] = f(points[i]) exactly; displacements[i]
// is the metric step d(points[i], points[i+1]). An exact fixed start
// converges in 0 iterations with the single-point orbit [x0].
struct Orbit {
  enum class Status { Converged, Cycled, BudgetExhausted, Escaped };

  std::vector<double> points;
  std::vector<double> displacements;
  Status status = Status::BudgetExhausted;
  std::optional<double> limit;   // Converged only; snapped to an exact candidate
  std::size_t iterations = 0;    // f-applications performed
  std::optional<std::size_t> period;        // Cycled only
  std::optional<double> escaped_point;      // Escaped only
  bool limit_in_carrier = true;  // false when the numeric limit escapes the space
};

struct SolveOptions {
  std::size_t max_iters = kDefaultMaxIters;
  double tol = kDefaultTol;
};

// The admissible-start set {x : (x, f(x)) related}, computed exactly:
// per-piece linear inequalities for Geq/Leq, support enumeration for pair
// lists, the whole carrier for Universal, point enumeration for finite
// carriers. witness is the deterministic representative.
struct AdmissibleStarts {
  PointSet set;
  std::optional<double> witness;
};
AdmissibleStarts compute_admissible_starts(const MetricSpace& space, const Relation& rel,
                                           const SelfMap& f);

// Iterates f from x0 until the step drops below tol (Converged), an exact
// repeat closes a cycle (Cycled, window kCycleWindow), the budget runs out,
// or the orbit leaves the carrier (only reachable through unchecked maps).
// Converged limits snap to the nearest exact candidate (piece fixed points,
// breakpoints, carrier endpoints/points) within kSnapFactor * tol.
Orbit picard(const SelfMap& f, double x0, const SolveOptions& opts = {});

// A-priori tail bound sum_{j>=n} phi^j(d0). Exact closed form for Linear
// (k^n * d0 / (1-k)); otherwise a partial sum of tail_terms iterates with
// truncated=true unless the remainder provably vanished.
struct SeriesBound {
  double value = 0;
  bool truncated = false;
};
SeriesBound error_bound(const ComparisonFunction& phi, double d0, std::size_t n,
                        std::size_t tail_terms = kDefaultSeriesTerms);

// All fixed points, exactly: per-piece solutions of x = slope*x + intercept
// filtered by piece domains (slope == 1 yields none or the whole piece), or
// table enumeration. Continuum results stay intervals.
PointSet fixed_points(const SelfMap& f);

// Picard run plus derived facts, as the CLI consumes it.
struct SolveResult {
  Orbit orbit;
  std::optional<double> fixed_point; // orbit limit when it is exactly fixed
  std::optional<SeriesBound> bound;  // phi-series tail bound at the stopping index
};
SolveResult solve(const ContractionInstance& inst, double x0, const SolveOptions& opts = {});

// Uniqueness evidence for a pair of fixed points.
struct UniquenessEvidence {
  enum class Mode { Directedness, CompleteRestriction };
  Mode mode = Mode::Directedness;
  Verdict verdict;
  std::optional<double> bridge;       // common successor z, when searched for
  std::optional<Orbit> bridge_orbit;  // Picard orbit of z
  std::vector<double> decay_to_p;     // d(p, f^n z) along the bridge orbit
  std::vector<double> decay_to_q;
};

// Constructive route: find z related (symmetrically) to both fixed points,
// iterate it, and require both distance traces to collapse below tol.
UniquenessEvidence uniqueness_via_directedness(const ContractionInstance& inst, double p,
                                               double q,
                                               const std::vector<double>& candidate_pool = {},
                                               const SolveOptions& opts = {});

// Consistency route through completeness of the relation restricted to the
// image: two distinct fixed points alongside a complete restriction and a
// passing contraction is a contradiction and fails; otherwise no claim is
// made and the verdict holds.
UniquenessEvidence uniqueness_via_complete_restriction(const ContractionInstance& inst,
                                                       double p, double q);

// Do the recorded steps obey d(x_n, x_{n+1}) <= phi^n(d(x_0, x_1)) + slack?
Verdict check_displacement_bound(const Orbit& orbit, const ComparisonFunction& phi,
                                 double slack = kEps);

} // namespace relfix
