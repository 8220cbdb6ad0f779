#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace relfix {

// Randomized cross-module invariant suite over seeded finite instances.
// Deterministic for a fixed seed. The mutation hook injects a known fault
// into the suite's independent envelope oracle so the harness can prove it
// would catch a real one.
struct PropertyOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 500;
  enum class Mutation { None, DropEnvelopeTerm } mutation = Mutation::None;
  std::ostream* log = nullptr; // optional progress/failure stream
};

struct PropertyResult {
  bool ok = true;
  std::size_t cases_run = 0;
  std::size_t checks_run = 0;
  std::string failure; // replayable description: seed, case index, shrunken witness
};

PropertyResult run_property_suite(const PropertyOptions& opts);

} // namespace relfix
