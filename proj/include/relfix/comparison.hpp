#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relfix/numeric.hpp"
#include "relfix/verdict.hpp"

namespace relfix {

enum class PhiFamily { Linear, Rational, Table };

// A comparison (control) function candidate psi: [0, inf) -> [0, inf).
//
//   Linear(k)    psi(t) = k*t, 0 <= k < 1
//   Rational(c)  psi(t) = t/(c + t), c > 0
//   Table        piecewise-linear through (0,0) and the given breakpoints,
//                extrapolating the last segment's slope beyond the table
//
// Membership in the summable class (Phi) or the integrable-gauge class
// (Lambda) is checked by the functions below, never assumed: the table form
// may mimic the identity, and Rational(c) with c <= 1 genuinely fails, which
// is exactly what the negative tests need.
class ComparisonFunction {
 public:
  static ComparisonFunction linear(double k);
  static ComparisonFunction rational(double c);
  // Breakpoint arguments strictly increasing and positive; values
  // non-negative and non-decreasing.
  static ComparisonFunction table(std::vector<std::pair<double, double>> breakpoints);

  PhiFamily family() const { return family_; }
  double linear_k() const { return k_; }
  double rational_c() const { return c_; }
  const std::vector<std::pair<double, double>>& breakpoints() const { return table_; }

  std::string describe() const;

  bool operator==(const ComparisonFunction&) const = default;

 private:
  ComparisonFunction() = default;
  PhiFamily family_ = PhiFamily::Linear;
  double k_ = 0;
  double c_ = 1;
  std::vector<std::pair<double, double>> table_;
};

// psi(t); requires t >= 0 (throws std::invalid_argument).
double evaluate(const ComparisonFunction& phi, double t);

// n-fold composition psi^n(t); psi^0 = identity.
double iterate(const ComparisonFunction& phi, std::size_t n, double t);

// Default evaluation grid 10^k for k = -3..1, optionally extended by an
// instance-derived scale.
std::vector<double> default_grid(std::optional<double> instance_scale = std::nullopt);

struct PhiReport {
  // Summable-class facts: monotonicity, convergence of sum_n psi^n(t) on the
  // grid, and psi(t) < t on the grid (which the first two imply, so a passing
  // pair with a failing third flags an inconsistency).
  Verdict increasing;
  Verdict summable;
  Verdict below_identity;

  // Integrable-gauge facts, present only when the Lambda check ran:
  // 0 < psi(t) < t, the gauge g(t) = t/(t - psi(t)) strictly decreasing, and
  // integral_0^T g finite (epsilon-ladder quadrature).
  std::optional<Verdict> positive;
  std::optional<Verdict> gauge_decreasing;
  std::optional<Verdict> gauge_integrable;
  // Lambda-passing candidates must also pass the summable check; present when
  // the Lambda check ran and all three Lambda verdicts pass.
  std::optional<Verdict> cross_check;

  std::vector<double> grid;

  bool phi_ok() const {
    return increasing.passes() && summable.passes() && below_identity.passes();
  }
  bool lambda_ok() const {
    return positive && positive->passes() && gauge_decreasing &&
           gauge_decreasing->passes() && gauge_integrable && gauge_integrable->passes();
  }

  Verdict overall_phi() const;
  Verdict overall_lambda() const;
};

// Summable-class check. Linear verdicts are exact (geometric closed form);
// Rational and Table run the sampled series engine: terms that stop
// decreasing above the tolerance fail outright, non-increasing terms with
// n*psi^n(t) bounded away from zero at depths N, 2N, 4N fail by the
// monotone-term divergence test, and tails below kEps pass as sampled.
PhiReport check_phi_membership(const ComparisonFunction& phi, std::vector<double> grid = {},
                               std::size_t terms = kDefaultSeriesTerms);

// Integrable-gauge check over (0, T], filling the Lambda fields and running
// the summable cross-check when all three pass.
PhiReport check_lambda_membership(const ComparisonFunction& phi, double T = 1.0,
                                  std::size_t ladder_depth = kQuadLadderDepth,
                                  std::vector<double> grid = {},
                                  std::size_t terms = kDefaultSeriesTerms);

} // namespace relfix
