#include "relfix/report.hpp"

#include <cstddef>
#include <string>
#include <vector>

#include "relfix/numeric.hpp"
#include "relfix/relation.hpp"

namespace relfix {

namespace {

using nlohmann::json;

constexpr std::size_t kTextOrbitPrefix = 10;
constexpr std::size_t kMachineOrbitPrefix = 64;

std::string join_numbers(const std::vector<double>& xs, const char* sep,
                         std::size_t limit = static_cast<std::size_t>(-1)) {
  std::string s;
  std::size_t n = xs.size() < limit ? xs.size() : limit;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += sep;
    s += format_number(xs[i]);
  }
  return s;
}

// Brace set with no inner spaces, so lines like F(f)={0,4} are grep-stable.
std::string compact_set(const PointSet& s) {
  if (!s.finite()) return s.to_string();
  std::string out = "{";
  out += join_numbers(s.points(), ",");
  out += "}";
  return out;
}

const char* status_name(Orbit::Status s) {
  switch (s) {
    case Orbit::Status::Converged: return "Converged";
    case Orbit::Status::Cycled: return "Cycled";
    case Orbit::Status::BudgetExhausted: return "BudgetExhausted";
    case Orbit::Status::Escaped: return "Escaped";
  }
  return "?";
}

std::string grade_tag(const HypothesisReport& r) {
  switch (r.overall.grade) {
    case Grade::Holds: return "pass";
    case Grade::HoldsSampled: return "pass (sampled)";
    case Grade::Fails:
      return r.first_failing.empty() ? "FAIL" : "FAIL at " + r.first_failing;
    case Grade::Unknown:
      return r.first_failing.empty() ? "unknown" : "unknown at " + r.first_failing;
  }
  return "?";
}

std::string orbit_line(const Orbit& o) {
  std::string s = status_name(o.status);
  s += ", iterations " + std::to_string(o.iterations);
  s += "; orbit " + join_numbers(o.points, ", ", kTextOrbitPrefix);
  if (o.points.size() > kTextOrbitPrefix)
    s += ", ... (" + std::to_string(o.points.size()) + " points)";
  if (o.limit) {
    s += "; limit " + format_number(*o.limit);
    if (!o.limit_in_carrier) s += " (outside the carrier)";
  }
  if (o.period) s += "; period " + std::to_string(*o.period);
  if (o.escaped_point) s += "; escaped at " + format_number(*o.escaped_point);
  return s;
}

void append_solve_body(std::string& s, const SolveResult& r, const std::string& indent) {
  s += indent + orbit_line(r.orbit) + "\n";
  if (r.fixed_point) s += indent + "fixed point: " + format_number(*r.fixed_point) + "\n";
  if (r.bound) {
    s += indent + "phi-series tail bound: " + format_number(r.bound->value);
    if (r.bound->truncated) s += " (truncated partial sum)";
    s += "\n";
  }
}

void append_row(std::string& s, const TheoremRow& row) {
  s += "  ";
  s += theorem_name(row.id);
  if (!row.report) {
    s += " [n/a] " + row.na_reason + "\n";
    return;
  }
  const HypothesisReport& r = *row.report;
  s += " [" + grade_tag(r) + "] ";
  s += theorem_summary(row.id);
  s += "\n";
  if (!row.adapted_condition.empty())
    s += "    adapted condition: " + row.adapted_condition + "\n";
  for (const HypothesisSlot& slot : r.slots) {
    s += "    " + slot.label + " " + slot.description + ": " + render_verdict(slot.verdict) + "\n";
  }
  if (r.conclusion) s += "    conclusion: " + render_verdict(*r.conclusion) + "\n";
  if (!r.note.empty()) s += "    note: " + r.note + "\n";
}

json orbit_to_json(const Orbit& o) {
  json j;
  j["status"] = status_name(o.status);
  j["iterations"] = o.iterations;
  json pts = json::array();
  for (std::size_t i = 0; i < o.points.size() && i < kMachineOrbitPrefix; ++i)
    pts.push_back(o.points[i]);
  j["points"] = std::move(pts);
  j["total_points"] = o.points.size();
  json disp = json::array();
  for (std::size_t i = 0; i < o.displacements.size() && i < kMachineOrbitPrefix; ++i)
    disp.push_back(o.displacements[i]);
  j["displacements"] = std::move(disp);
  if (o.limit) j["limit"] = *o.limit;
  if (o.period) j["period"] = *o.period;
  if (o.escaped_point) j["escaped_point"] = *o.escaped_point;
  j["limit_in_carrier"] = o.limit_in_carrier;
  return j;
}

} // namespace

std::string render_witness(const Witness& w) {
  std::string s = "witness (";
  s += join_numbers(w.points, ", ");
  s += ")";
  if (!w.description.empty()) s += ": " + w.description;
  if (w.lhs || w.rhs) {
    s += " [";
    if (w.lhs) s += "lhs=" + format_number(*w.lhs);
    if (w.lhs && w.rhs) s += ", ";
    if (w.rhs) s += "rhs=" + format_number(*w.rhs);
    s += "]";
  }
  return s;
}

std::string render_verdict(const Verdict& v, bool with_note) {
  std::string s = to_string(v.grade);
  if (with_note && !v.note.empty()) s += ": " + v.note;
  if (v.witness) s += "; " + render_witness(*v.witness);
  return s;
}

std::string render_instance_header(const InstanceDocument& doc) {
  std::string s = "instance " + doc.name + "\n";
  s += "  space X: " + doc.instance.x().describe() + "\n";
  if (doc.instance.subspace != doc.instance.space)
    s += "  subspace Y: " + doc.instance.y().describe() + "\n";
  s += "  relation: " + doc.instance.relation.describe() + "\n";
  s += "  map: " + doc.instance.map.describe() + "\n";
  s += "  condition: " + doc.instance.condition.describe() + "\n";
  if (doc.instance.phi) s += "  phi: " + doc.instance.phi->describe() + "\n";
  return s;
}

std::string render_comparison_text(const InstanceDocument& doc, const TheoremComparison& cmp) {
  std::string s = render_instance_header(doc);
  s += "\n";
  s += "theorem check (" + std::to_string(cmp.rows.size()) +
       (cmp.rows.size() == 1 ? " bundle)\n" : " bundles)\n");
  for (const TheoremRow& row : cmp.rows) append_row(s, row);
  return s;
}

std::string render_solve_text(const InstanceDocument& doc, const SolveResult& result) {
  std::string s = "solve " + doc.name;
  if (!result.orbit.points.empty())
    s += " from x0=" + format_number(result.orbit.points.front());
  s += "\n";
  append_solve_body(s, result, "  ");
  return s;
}

std::string render_reproduction(const InstanceDocument& doc, std::size_t pair_budget) {
  const ContractionInstance& inst = doc.instance;
  std::string s = "reproduction report: " + doc.name + "\n";
  s += render_instance_header(doc);

  s += "\nfixed points and admissible starts\n";
  PointSet fixed = fixed_points(inst.map);
  s += "  F(f)=" + compact_set(fixed) + "\n";
  AdmissibleStarts in_r = compute_admissible_starts(inst.x(), inst.relation, inst.map);
  AdmissibleStarts in_s =
      compute_admissible_starts(inst.x(), symmetric_closure(inst.relation), inst.map);
  s += "  X(f,R)=" + compact_set(in_r.set) + "\n";
  s += "  X(f,S)=" + compact_set(in_s.set) + "\n";

  s += "\nrelational structure\n";
  PointSet image = inst.map.image();
  s += "  image f(X) = " + compact_set(image) + "\n";
  s += "  directed(f(X), R^s): " + render_verdict(is_directed(inst.relation, image, true)) + "\n";
  s += "  complete(R on f(X)): " + render_verdict(is_complete_relation(inst.relation, image)) +
       "\n";

  s += "\nhypothesis check (pair budget " + std::to_string(pair_budget) + ")\n";
  TheoremComparison cmp = compare_theorems(inst, doc.theorems, pair_budget);
  for (const TheoremRow& row : cmp.rows) append_row(s, row);

  s += "\norbits\n";
  std::vector<double> starts;
  if (doc.solver.x0) {
    starts.push_back(*doc.solver.x0);
  } else if (in_r.set.finite()) {
    starts = in_r.set.points();
  } else if (in_r.witness) {
    starts.push_back(*in_r.witness);
  }
  SolveOptions opts{doc.solver.max_iters, doc.solver.tol};
  for (double x0 : starts) {
    SolveResult r = solve(inst, x0, opts);
    s += "  start " + format_number(x0) + ": " + orbit_line(r.orbit) + "\n";
    if (r.fixed_point) s += "    fixed point: " + format_number(*r.fixed_point) + "\n";
    if (r.bound) {
      s += "    phi-series tail bound: " + format_number(r.bound->value);
      if (r.bound->truncated) s += " (truncated partial sum)";
      s += "\n";
    }
    if (inst.phi && !r.orbit.displacements.empty())
      s += "    displacement bound d(x_n, x_n+1) <= phi^n(d(x_0, x_1)): " +
           render_verdict(check_displacement_bound(r.orbit, *inst.phi)) + "\n";
  }
  return s;
}

json verdict_to_json(const Verdict& v) {
  json j;
  j["grade"] = to_string(v.grade);
  j["note"] = v.note;
  if (v.witness) {
    json w;
    w["points"] = v.witness->points;
    w["description"] = v.witness->description;
    if (v.witness->lhs) w["lhs"] = *v.witness->lhs;
    if (v.witness->rhs) w["rhs"] = *v.witness->rhs;
    j["witness"] = std::move(w);
  }
  return j;
}

json report_to_json(const HypothesisReport& r) {
  json j;
  j["theorem"] = theorem_name(r.id);
  j["summary"] = theorem_summary(r.id);
  json slots = json::array();
  for (const HypothesisSlot& slot : r.slots) {
    json sj;
    sj["label"] = slot.label;
    sj["description"] = slot.description;
    sj["uniqueness_role"] = slot.uniqueness_role;
    sj["verdict"] = verdict_to_json(slot.verdict);
    slots.push_back(std::move(sj));
  }
  j["slots"] = std::move(slots);
  j["overall"] = verdict_to_json(r.overall);
  if (r.conclusion) j["conclusion"] = verdict_to_json(*r.conclusion);
  j["first_failing"] = r.first_failing;
  j["note"] = r.note;
  return j;
}

json comparison_to_json(const InstanceDocument& doc, const TheoremComparison& cmp) {
  json j;
  j["instance"] = doc.name;
  json rows = json::array();
  for (const TheoremRow& row : cmp.rows) {
    json rj;
    rj["theorem"] = theorem_name(row.id);
    if (row.report) {
      rj["report"] = report_to_json(*row.report);
    } else {
      rj["na_reason"] = row.na_reason;
    }
    if (!row.adapted_condition.empty()) rj["adapted_condition"] = row.adapted_condition;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return j;
}

json solve_to_json(const InstanceDocument& doc, const SolveResult& result) {
  json j;
  j["instance"] = doc.name;
  j["orbit"] = orbit_to_json(result.orbit);
  if (result.fixed_point) j["fixed_point"] = *result.fixed_point;
  if (result.bound) {
    json b;
    b["value"] = result.bound->value;
    b["truncated"] = result.bound->truncated;
    j["bound"] = std::move(b);
  }
  return j;
}

} // namespace relfix
