#pragma once

#include <string>

#include "json.hpp"

#include "relfix/checker.hpp"
#include "relfix/instance.hpp"
#include "relfix/solver.hpp"

namespace relfix {

// Deterministic renderers: equal inputs produce byte-identical output, which
// is what the golden-report comparison relies on.

std::string render_witness(const Witness& w);
std::string render_verdict(const Verdict& v, bool with_note = true);

std::string render_instance_header(const InstanceDocument& doc);
std::string render_comparison_text(const InstanceDocument& doc, const TheoremComparison& cmp);
std::string render_solve_text(const InstanceDocument& doc, const SolveResult& result);

// Full reproduction scenario for a bundled instance: header, hypothesis
// table, solver section, and the instance's negative claims.
std::string render_reproduction(const InstanceDocument& doc, std::size_t pair_budget);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json report_to_json(const HypothesisReport& r);
nlohmann::json comparison_to_json(const InstanceDocument& doc, const TheoremComparison& cmp);
nlohmann::json solve_to_json(const InstanceDocument& doc, const SolveResult& result);

} // namespace relfix
