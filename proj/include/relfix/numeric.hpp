#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace relfix {

// Tolerance policy, in one place.
//
// Set membership, interval endpoints, and piecewise dispatch are always exact;
// the constants below apply only where a limit or an inequality is judged
// numerically.
inline constexpr double kEps = 1e-9;     // limit detection, series tails, violation threshold
inline constexpr double kEpsCmp = 1e-12; // roundoff deadband when comparing inequality sides
inline constexpr double kDefaultTol = 1e-12;
inline constexpr double kSnapFactor = 10.0; // limits snap to exact candidates within kSnapFactor*tol
inline constexpr double kQuadRelTol = 1e-6; // quadrature stabilization, relative

inline constexpr std::size_t kDefaultMaxIters = 100000;
inline constexpr std::size_t kDefaultPairBudget = 10000;
inline constexpr std::size_t kDefaultSeriesTerms = 10000;
inline constexpr std::size_t kCycleWindow = 1000;    // exact-repeat detection window
inline constexpr std::size_t kQuadLadderDepth = 20;  // epsilon ladder T*2^-j, j = 1..depth

// Shortest round-trip decimal form, deterministic across runs. "-0" is
// normalized to "0"; integral values print without a fraction.
std::string format_number(double v);

} // namespace relfix
