#include "relfix/verdict.hpp"

#include <utility>

namespace relfix {

const char* to_string(Grade g) {
  switch (g) {
    case Grade::Holds: return "Holds";
    case Grade::HoldsSampled: return "HoldsSampled";
    case Grade::Fails: return "Fails";
    case Grade::Unknown: return "Unknown";
  }
  return "Unknown";
}

Verdict Verdict::holds(std::string note) { return {Grade::Holds, std::nullopt, std::move(note)}; }

Verdict Verdict::holds_sampled(std::string note) {
  return {Grade::HoldsSampled, std::nullopt, std::move(note)};
}

Verdict Verdict::fails(Witness w, std::string note) {
  return {Grade::Fails, std::move(w), std::move(note)};
}

Verdict Verdict::unknown(std::string note) {
  return {Grade::Unknown, std::nullopt, std::move(note)};
}

namespace {

int severity(Grade g) {
  switch (g) {
    case Grade::Fails: return 3;
    case Grade::Unknown: return 2;
    case Grade::HoldsSampled: return 1;
    case Grade::Holds: return 0;
  }
  return 2;
}

} // namespace

Verdict conjunction(std::span<const Verdict> vs) {
  if (vs.empty()) return Verdict::holds("vacuous");
  const Verdict* worst = &vs[0];
  for (const Verdict& v : vs)
    if (severity(v.grade) > severity(worst->grade)) worst = &v;
  return *worst;
}

Verdict disjunction(std::span<const Verdict> vs) {
  if (vs.empty()) return Verdict::unknown("no alternatives");
  const Verdict* best = &vs[0];
  for (const Verdict& v : vs)
    if (severity(v.grade) < severity(best->grade)) best = &v;
  return *best;
}

} // namespace relfix
