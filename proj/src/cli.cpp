#include "relfix/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "relfix/instance.hpp"
#include "relfix/property_suite.hpp"
#include "relfix/report.hpp"

namespace relfix {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;

int grade_exit(Grade g) {
  if (g == Grade::Fails) return kExitFail;
  if (g == Grade::Unknown) return kExitUnknown;
  return kExitPass;
}

// Fail dominates, then unknown-only, then pass.
int worst(int a, int b) {
  if (a == kExitFail || b == kExitFail) return kExitFail;
  if (a == kExitUnknown || b == kExitUnknown) return kExitUnknown;
  return kExitPass;
}

InstanceDocument resolve_document(const std::string& ref) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(ref, ec)) return load_instance_file(ref);

  std::string id = ref;
  if (id.rfind("example", 0) == 0) id = id.substr(7);
  for (const std::string& known : builtin_ids())
    if (id == known) return builtin_instance(id);

  fs::path dir = data_directory();
  const fs::path candidates[] = {dir / ref, dir / (ref + ".json"),
                                 dir / ("example" + id + ".json")};
  for (const fs::path& cand : candidates)
    if (fs::is_regular_file(cand, ec)) return load_instance_file(cand.string());

  throw ParseError("no such instance file or builtin id (builtins: 4.1, 4.2, 4.3)", ref);
}

std::vector<TheoremId> parse_theorem_list(const std::string& csv) {
  std::vector<TheoremId> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::optional<TheoremId> id = parse_theorem(item);
    if (!id) throw ParseError("unknown theorem '" + item + "'", "--theorems");
    out.push_back(*id);
  }
  if (out.empty()) throw ParseError("no theorem ids given", "--theorems");
  return out;
}

int cmd_check(const InstanceDocument& doc, const std::vector<TheoremId>& ids,
              std::size_t budget, bool machine, std::string& out) {
  TheoremComparison cmp = compare_theorems(doc.instance, ids, budget);
  if (machine) {
    out += comparison_to_json(doc, cmp).dump(2) + "\n";
  } else {
    out += render_comparison_text(doc, cmp);
  }
  int code = kExitPass;
  for (const TheoremRow& row : cmp.rows)
    code = worst(code, row.report ? grade_exit(row.report->overall.grade) : kExitUnknown);
  return code;
}

int orbit_exit(const Orbit& o) {
  switch (o.status) {
    case Orbit::Status::Converged: return o.limit_in_carrier ? kExitPass : kExitFail;
    case Orbit::Status::BudgetExhausted: return kExitUnknown;
    case Orbit::Status::Cycled:
    case Orbit::Status::Escaped: return kExitFail;
  }
  return kExitUnknown;
}

int cmd_solve(const InstanceDocument& doc, std::optional<double> x0_flag, bool all_starts,
              std::size_t iter_budget, bool machine, std::string& out) {
  const ContractionInstance& inst = doc.instance;
  SolveOptions opts{iter_budget ? iter_budget : doc.solver.max_iters, doc.solver.tol};
  AdmissibleStarts starts =
      compute_admissible_starts(inst.x(), inst.relation, inst.map);

  std::vector<double> x0s;
  std::string preface;
  if (all_starts) {
    if (starts.set.finite()) {
      x0s = starts.set.points();
      if (x0s.empty()) {
        out += "the admissible-start set X(f,R) is empty; nothing to iterate\n";
        return kExitUnknown;
      }
    } else if (starts.witness) {
      preface = "X(f,R) = " + starts.set.to_string() +
                " is a continuum; iterating from its representative\n";
      x0s.push_back(*starts.witness);
    } else {
      out += "the admissible-start set X(f,R) is empty; nothing to iterate\n";
      return kExitUnknown;
    }
  } else if (x0_flag) {
    x0s.push_back(*x0_flag);
  } else if (doc.solver.x0) {
    x0s.push_back(*doc.solver.x0);
  } else if (starts.witness) {
    preface = "no x0 given; starting from the admissible representative " +
              format_number(*starts.witness) + "\n";
    x0s.push_back(*starts.witness);
  } else {
    throw ParseError("no start point: pass --x0 (the admissible-start set is empty)", "solve");
  }

  int code = kExitPass;
  if (machine) {
    nlohmann::json runs = nlohmann::json::array();
    for (double x0 : x0s) {
      SolveResult r = solve(inst, x0, opts);
      runs.push_back(solve_to_json(doc, r));
      code = worst(code, orbit_exit(r.orbit));
    }
    out += runs.dump(2) + "\n";
  } else {
    out += preface;
    for (double x0 : x0s) {
      SolveResult r = solve(inst, x0, opts);
      out += render_solve_text(doc, r);
      code = worst(code, orbit_exit(r.orbit));
    }
  }
  return code;
}

int cmd_reproduce(const std::string& ref, std::string& out, std::string& err) {
  std::string id = ref;
  if (id.rfind("example", 0) == 0) id = id.substr(7);
  bool known = false;
  for (const std::string& b : builtin_ids()) known = known || b == id;
  if (!known) {
    err += "unknown example id '" + ref + "' (known: 4.1, 4.2, 4.3)\n";
    return kExitUsage;
  }
  InstanceDocument doc = builtin_instance(id);
  std::string produced = render_reproduction(doc, doc.budgets.pair_budget);

  namespace fs = std::filesystem;
  fs::path golden_path = fs::path(data_directory()) / "golden" / ("example" + id + ".txt");
  std::ifstream in(golden_path);
  if (!in) {
    err += "golden report not found: " + golden_path.string() + "\n";
    return kExitUsage;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string golden = buf.str();

  out += produced;
  if (produced == golden) {
    out += "golden: exact match (" + golden_path.string() + ")\n";
    return kExitPass;
  }
  std::istringstream a(produced), b(golden);
  std::string la, lb;
  std::size_t line = 0;
  while (true) {
    ++line;
    bool ga = static_cast<bool>(std::getline(a, la));
    bool gb = static_cast<bool>(std::getline(b, lb));
    if (!ga && !gb) break;
    if (la != lb || ga != gb) {
      err += "golden mismatch at line " + std::to_string(line) + " (" + golden_path.string() +
             ")\n  produced: " + (ga ? la : "<end of report>") +
             "\n  expected: " + (gb ? lb : "<end of report>") + "\n";
      break;
    }
  }
  return kExitFail;
}

int cmd_properties(std::uint64_t seed, std::size_t cases, bool mutate, std::string& out) {
  PropertyOptions opts;
  opts.seed = seed;
  opts.cases = cases;
  opts.mutation =
      mutate ? PropertyOptions::Mutation::DropEnvelopeTerm : PropertyOptions::Mutation::None;
  PropertyResult result = run_property_suite(opts);
  out += "property suite: " + std::to_string(result.cases_run) + " cases, " +
         std::to_string(result.checks_run) + " checks, " + (result.ok ? "ok" : "FAIL") + "\n";
  if (!result.ok) out += result.failure + "\n";
  return result.ok ? kExitPass : kExitFail;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err) {
  CLI::App app{"checks relation-theoretic fixed point bundles on concrete instances"};
  app.name("relfix");
  app.require_subcommand(1);

  std::string instance_ref, theorems_csv, format = "text", repro_id;
  std::size_t budget = 0;
  std::optional<double> x0_flag;
  bool all_starts = false, mutate = false;
  std::uint64_t seed = 1;
  std::size_t cases = 500;

  CLI::App* check = app.add_subcommand("check", "evaluate theorem bundles on an instance");
  check->add_option("instance", instance_ref, "instance file or builtin id")->required();
  check->add_option("--theorems", theorems_csv,
                    "comma-separated bundle ids (default: the document's list, else all)");
  check->add_option("--budget", budget, "pair sampling budget override");
  check->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "machine"}));

  CLI::App* solve_cmd = app.add_subcommand("solve", "run the fixed-point iteration");
  solve_cmd->add_option("instance", instance_ref, "instance file or builtin id")->required();
  double x0_value = 0;
  CLI::Option* x0_opt = solve_cmd->add_option("--x0", x0_value, "starting point");
  solve_cmd->add_flag("--all-starts", all_starts,
                      "iterate from every admissible start (finite sets)");
  solve_cmd->add_option("--budget", budget, "iteration budget override");
  solve_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "machine"}));

  CLI::App* repro = app.add_subcommand("reproduce", "diff a bundled example against its golden report");
  repro->add_option("id", repro_id, "example id: 4.1, 4.2, or 4.3")->required();

  CLI::App* props = app.add_subcommand("properties", "run the randomized invariant suite");
  props->add_option("--seed", seed, "random seed");
  props->add_option("--cases", cases, "number of generated cases")
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
  props->add_flag("--mutate-envelope", mutate,
                  "self-test hook: corrupt the envelope oracle and expect a failure");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, m;
    int rc = app.exit(e, o, m);
    out += o.str();
    err += m.str();
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (check->parsed()) {
      InstanceDocument doc = resolve_document(instance_ref);
      std::vector<TheoremId> ids;
      if (!theorems_csv.empty()) {
        ids = parse_theorem_list(theorems_csv);
      } else if (!doc.theorems.empty()) {
        ids = doc.theorems;
      } else {
        ids.assign(std::begin(kAllTheorems), std::end(kAllTheorems));
      }
      std::size_t pair_budget = budget ? budget : doc.budgets.pair_budget;
      return cmd_check(doc, ids, pair_budget, format == "machine", out);
    }
    if (solve_cmd->parsed()) {
      InstanceDocument doc = resolve_document(instance_ref);
      if (x0_opt->count()) x0_flag = x0_value;
      return cmd_solve(doc, x0_flag, all_starts, budget, format == "machine", out);
    }
    if (repro->parsed()) return cmd_reproduce(repro_id, out, err);
    if (props->parsed()) return cmd_properties(seed, cases, mutate, out);
  } catch (const ParseError& e) {
    err += std::string(e.what()) + "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err += std::string(e.what()) + "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run_cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  std::string out, err;
  int code = run_cli(args, out, err);
  std::cout << out;
  std::cerr << err;
  return code;
}

} // namespace relfix
