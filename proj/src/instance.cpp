#include "relfix/instance.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace relfix {

namespace {

using json = nlohmann::ordered_json;

std::pair<int, int> locate(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError(msg, path);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) ok = true;
    if (!ok) fail(path, "unknown key '" + item.key() + "'");
  }
}

double get_number(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_number()) fail(path + "/" + key, "expected a number");
  return v.get<double>();
}

bool get_bool(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_boolean()) fail(path + "/" + key, "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_string()) fail(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::size_t get_count(const json& obj, const std::string& path, const char* key,
                      std::size_t fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer() || it->get<long long>() < 1)
    fail(path + "/" + key, "expected a positive integer");
  return it->get<std::size_t>();
}

// Maps std::invalid_argument thrown by a domain factory to a positioned
// diagnostic, preserving the factory's message text.
template <typename F>
auto lift(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Interval parse_interval(const json& j, const std::string& path) {
  reject_unknown(j, path, {"lo", "hi", "lo_closed", "hi_closed"});
  double lo = get_number(j, path, "lo");
  double hi = get_number(j, path, "hi");
  bool lc = get_bool(j, path, "lo_closed");
  bool hc = get_bool(j, path, "hi_closed");
  return lift(path, [&] { return Interval::make(lo, hi, lc, hc); });
}

std::shared_ptr<const MetricSpace> parse_space(const json& sp, const json& metric,
                                               const std::string& sp_path,
                                               const std::string& metric_path) {
  reject_unknown(metric, metric_path, {"kind", "rows"});
  std::string kind = get_string(metric, metric_path, "kind");
  if (kind != "usual" && kind != "matrix")
    fail(metric_path + "/kind", "metric kind must be 'usual' or 'matrix'");

  if (sp.is_object() && sp.contains("points")) {
    reject_unknown(sp, sp_path, {"points"});
    const json& arr = member(sp, sp_path, "points");
    if (!arr.is_array() || arr.empty()) fail(sp_path + "/points", "expected a non-empty array");
    std::vector<double> pts;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number())
        fail(sp_path + "/points/" + std::to_string(i), "expected a number");
      pts.push_back(arr[i].get<double>());
    }
    if (kind == "usual") {
      if (metric.contains("rows"))
        fail(metric_path + "/rows", "the usual metric takes no distance table");
      return std::make_shared<const MetricSpace>(
          lift(sp_path, [&] { return MetricSpace::finite(std::move(pts)); }));
    }
    const json& rows = member(metric, metric_path, "rows");
    if (!rows.is_array()) fail(metric_path + "/rows", "expected an array of rows");
    std::vector<double> flat;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const json& row = rows[i];
      std::string rp = metric_path + "/rows/" + std::to_string(i);
      if (!row.is_array() || row.size() != rows.size())
        fail(rp, "distance table rows must form a square");
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (!row[k].is_number()) fail(rp + "/" + std::to_string(k), "expected a number");
        flat.push_back(row[k].get<double>());
      }
    }
    return std::make_shared<const MetricSpace>(lift(metric_path, [&] {
      return MetricSpace::finite(std::move(pts), DistanceMatrix(rows.size(), std::move(flat)));
    }));
  }

  if (sp.is_object() && sp.contains("intervals")) {
    reject_unknown(sp, sp_path, {"intervals"});
    if (kind == "matrix")
      fail(metric_path, "an explicit distance table needs a finite carrier");
    const json& arr = member(sp, sp_path, "intervals");
    if (!arr.is_array() || arr.empty())
      fail(sp_path + "/intervals", "expected a non-empty array");
    std::vector<Interval> comps;
    for (std::size_t i = 0; i < arr.size(); ++i)
      comps.push_back(parse_interval(arr[i], sp_path + "/intervals/" + std::to_string(i)));
    return std::make_shared<const MetricSpace>(
        lift(sp_path, [&] { return MetricSpace::intervals(IntervalUnion(std::move(comps))); }));
  }

  fail(sp_path, "a space needs either 'points' or 'intervals'");
}

Relation parse_relation(const json& j, const std::string& path,
                        std::shared_ptr<const MetricSpace> space) {
  reject_unknown(j, path, {"kind", "pairs"});
  std::string kind = get_string(j, path, "kind");
  if (kind == "geq" || kind == "leq" || kind == "universal") {
    if (j.contains("pairs")) fail(path + "/pairs", "'" + kind + "' takes no pair list");
    if (kind == "geq") return Relation::geq(std::move(space));
    if (kind == "leq") return Relation::leq(std::move(space));
    return Relation::universal(std::move(space));
  }
  if (kind != "pairs")
    fail(path + "/kind", "relation kind must be 'geq', 'leq', 'universal', or 'pairs'");
  const json& arr = member(j, path, "pairs");
  if (!arr.is_array()) fail(path + "/pairs", "expected an array of [x, y] pairs");
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    std::string pp = path + "/pairs/" + std::to_string(i);
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      fail(pp, "expected a [x, y] number pair");
    pairs.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return lift(path, [&] { return Relation::pair_list(std::move(space), std::move(pairs)); });
}

SelfMap parse_map(const json& j, const std::string& path,
                  std::shared_ptr<const MetricSpace> space) {
  reject_unknown(j, path, {"pieces", "table"});
  if (j.contains("pieces") && j.contains("table"))
    fail(path, "a map takes either 'pieces' or 'table', not both");
  if (j.contains("pieces")) {
    const json& arr = member(j, path, "pieces");
    if (!arr.is_array() || arr.empty()) fail(path + "/pieces", "expected a non-empty array");
    std::vector<AffinePiece> pieces;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& p = arr[i];
      std::string pp = path + "/pieces/" + std::to_string(i);
      reject_unknown(p, pp, {"domain", "slope", "intercept"});
      AffinePiece piece;
      piece.domain = parse_interval(member(p, pp, "domain"), pp + "/domain");
      piece.slope = get_number(p, pp, "slope");
      piece.intercept = get_number(p, pp, "intercept");
      pieces.push_back(piece);
    }
    return lift(path, [&] { return SelfMap::piecewise(std::move(space), std::move(pieces)); });
  }
  if (!j.contains("table")) fail(path, "a map needs either 'pieces' or 'table'");
  const json& arr = member(j, path, "table");
  if (!arr.is_array() || arr.empty()) fail(path + "/table", "expected a non-empty array");
  std::vector<std::pair<double, double>> entries;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    std::string pp = path + "/table/" + std::to_string(i);
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      fail(pp, "expected a [x, f(x)] number pair");
    entries.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return lift(path, [&] { return SelfMap::table(std::move(space), std::move(entries)); });
}

ComparisonFunction parse_phi(const json& j, const std::string& path) {
  reject_unknown(j, path, {"family", "k", "c", "breakpoints"});
  std::string family = get_string(j, path, "family");
  if (family == "linear")
    return lift(path, [&] { return ComparisonFunction::linear(get_number(j, path, "k")); });
  if (family == "rational")
    return lift(path, [&] { return ComparisonFunction::rational(get_number(j, path, "c")); });
  if (family != "table")
    fail(path + "/family", "family must be 'linear', 'rational', or 'table'");
  const json& arr = member(j, path, "breakpoints");
  if (!arr.is_array() || arr.empty()) fail(path + "/breakpoints", "expected a non-empty array");
  std::vector<std::pair<double, double>> bps;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    std::string pp = path + "/breakpoints/" + std::to_string(i);
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      fail(pp, "expected a [t, value] number pair");
    bps.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return lift(path, [&] { return ComparisonFunction::table(std::move(bps)); });
}

Condition parse_condition(const json& j, const std::string& path) {
  reject_unknown(j, path, {"tag", "k", "a", "b", "c"});
  std::string tag = get_string(j, path, "tag");
  if (tag == "PhiM") return Condition::phi_m();
  if (tag == "PhiN") return Condition::phi_n();
  if (tag == "LambdaN") return Condition::lambda_n();
  if (tag == "LinearBanach")
    return lift(path, [&] { return Condition::banach(get_number(j, path, "k")); });
  if (tag == "LinearCiric")
    return lift(path, [&] { return Condition::ciric(get_number(j, path, "k")); });
  if (tag == "Kannan")
    return lift(path, [&] { return Condition::kannan(get_number(j, path, "k")); });
  if (tag == "Chatterjea")
    return lift(path, [&] { return Condition::chatterjea(get_number(j, path, "k")); });
  if (tag == "RationalABC")
    return lift(path, [&] {
      return Condition::rational_sum(get_number(j, path, "a"), get_number(j, path, "b"),
                                     get_number(j, path, "c"));
    });
  fail(path + "/tag", "unknown condition tag '" + tag + "'");
}

InstanceDocument build_document(const json& j, const std::string& source_name) {
  if (!j.is_object()) fail("/", "the document root must be an object");
  reject_unknown(j, "/",
                 {"name", "space", "subspace_y", "metric", "relation", "map", "phi", "condition",
                  "theorems", "solver", "budgets"});

  std::string name = j.contains("name") ? get_string(j, "/", "name") : source_name;

  const json& metric = member(j, "/", "metric");
  auto space = parse_space(member(j, "/", "space"), metric, "/space", "/metric");
  std::shared_ptr<const MetricSpace> subspace;
  if (j.contains("subspace_y")) {
    // The subspace always carries the usual metric; an explicit table would
    // need its own rows and no bundle uses one on Y.
    json usual;
    usual["kind"] = "usual";
    subspace = parse_space(j["subspace_y"], usual, "/subspace_y", "/subspace_y");
  }

  Relation rel = parse_relation(member(j, "/", "relation"), "/relation", space);
  SelfMap map = parse_map(member(j, "/", "map"), "/map", space);
  Condition cond = parse_condition(member(j, "/", "condition"), "/condition");
  std::optional<ComparisonFunction> phi;
  if (j.contains("phi")) phi = parse_phi(j["phi"], "/phi");

  ContractionInstance instance = lift("/", [&] {
    return make_instance(space, std::move(rel), std::move(map), cond, std::move(phi), subspace);
  });

  std::vector<TheoremId> theorems;
  if (j.contains("theorems")) {
    const json& arr = j["theorems"];
    if (!arr.is_array()) fail("/theorems", "expected an array of theorem names");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string())
        fail("/theorems/" + std::to_string(i), "expected a theorem name string");
      std::string th = arr[i].get<std::string>();
      std::optional<TheoremId> id = parse_theorem(th);
      if (!id) fail("/theorems/" + std::to_string(i), "unknown theorem '" + th + "'");
      theorems.push_back(*id);
    }
  }

  SolverSettings solver;
  if (j.contains("solver")) {
    const json& s = j["solver"];
    reject_unknown(s, "/solver", {"x0", "max_iters", "tol"});
    if (s.contains("x0")) {
      if (!s["x0"].is_number()) fail("/solver/x0", "expected a number");
      solver.x0 = s["x0"].get<double>();
    }
    solver.max_iters = get_count(s, "/solver", "max_iters", kDefaultMaxIters);
    if (s.contains("tol")) {
      if (!s["tol"].is_number() || !(s["tol"].get<double>() > 0))
        fail("/solver/tol", "expected a positive number");
      solver.tol = s["tol"].get<double>();
    }
  }

  Budgets budgets;
  if (j.contains("budgets")) {
    const json& b = j["budgets"];
    reject_unknown(b, "/budgets", {"pair_budget", "series_terms", "seed"});
    budgets.pair_budget = get_count(b, "/budgets", "pair_budget", kDefaultPairBudget);
    budgets.series_terms = get_count(b, "/budgets", "series_terms", kDefaultSeriesTerms);
    if (b.contains("seed")) {
      if (!b["seed"].is_number_integer() || b["seed"].get<long long>() < 0)
        fail("/budgets/seed", "expected a non-negative integer");
      budgets.seed = b["seed"].get<std::uint64_t>();
    }
  }

  return InstanceDocument{std::move(name), std::move(instance), std::move(theorems), solver,
                          budgets};
}

json interval_json(const Interval& c) {
  json j;
  j["lo"] = c.lo;
  j["hi"] = c.hi;
  j["lo_closed"] = c.lo_closed;
  j["hi_closed"] = c.hi_closed;
  return j;
}

json space_json(const MetricSpace& s) {
  json j;
  if (s.finite_carrier()) {
    j["points"] = s.points();
  } else {
    json arr = json::array();
    for (const Interval& c : s.carrier_intervals().components()) arr.push_back(interval_json(c));
    j["intervals"] = std::move(arr);
  }
  return j;
}

json metric_json(const MetricSpace& s) {
  json j;
  if (!s.has_matrix()) {
    j["kind"] = "usual";
    return j;
  }
  j["kind"] = "matrix";
  json rows = json::array();
  std::size_t n = s.points().size();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < n; ++k) row.push_back(s.matrix().at(i, k));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

} // namespace

ParseError::ParseError(std::string message, std::string where, int line, int column)
    : std::runtime_error(where.empty() ? message : message + " [at " + where + "]"),
      message_(std::move(message)),
      where_(std::move(where)),
      line_(line),
      column_(column) {}

InstanceDocument parse_instance(const std::string& text, const std::string& source_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(e.what(),
                     source_name + ":" + std::to_string(line) + ":" + std::to_string(col), line,
                     col);
  } catch (const json::exception& e) {
    // e.g. out_of_range on a number overflow; no byte position is available
    throw ParseError(e.what(), source_name);
  }
  try {
    return build_document(j, source_name);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), source_name + ":" + e.where(), e.line(), e.column());
  } catch (const std::exception& e) {
    throw ParseError(e.what(), source_name);
  }
}

InstanceDocument load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path);
}

std::string serialize_instance(const InstanceDocument& doc) {
  json j;
  j["name"] = doc.name;
  j["space"] = space_json(doc.instance.x());
  if (doc.instance.subspace != doc.instance.space) j["subspace_y"] = space_json(doc.instance.y());
  j["metric"] = metric_json(doc.instance.x());

  json rel;
  switch (doc.instance.relation.kind()) {
    case RelationKind::Geq: rel["kind"] = "geq"; break;
    case RelationKind::Leq: rel["kind"] = "leq"; break;
    case RelationKind::Universal: rel["kind"] = "universal"; break;
    case RelationKind::PairList: {
      rel["kind"] = "pairs";
      json arr = json::array();
      for (auto [a, b] : doc.instance.relation.pairs()) arr.push_back(json::array({a, b}));
      rel["pairs"] = std::move(arr);
      break;
    }
  }
  j["relation"] = std::move(rel);

  json map;
  if (doc.instance.map.is_table()) {
    json arr = json::array();
    for (auto [x, v] : doc.instance.map.table_entries()) arr.push_back(json::array({x, v}));
    map["table"] = std::move(arr);
  } else {
    json arr = json::array();
    for (const AffinePiece& p : doc.instance.map.pieces()) {
      json pj;
      pj["domain"] = interval_json(p.domain);
      pj["slope"] = p.slope;
      pj["intercept"] = p.intercept;
      arr.push_back(std::move(pj));
    }
    map["pieces"] = std::move(arr);
  }
  j["map"] = std::move(map);

  if (doc.instance.phi) {
    json phi;
    switch (doc.instance.phi->family()) {
      case PhiFamily::Linear:
        phi["family"] = "linear";
        phi["k"] = doc.instance.phi->linear_k();
        break;
      case PhiFamily::Rational:
        phi["family"] = "rational";
        phi["c"] = doc.instance.phi->rational_c();
        break;
      case PhiFamily::Table: {
        phi["family"] = "table";
        json arr = json::array();
        for (auto [t, v] : doc.instance.phi->breakpoints()) arr.push_back(json::array({t, v}));
        phi["breakpoints"] = std::move(arr);
        break;
      }
    }
    j["phi"] = std::move(phi);
  }

  json cond;
  cond["tag"] = to_string(doc.instance.condition.tag);
  switch (doc.instance.condition.tag) {
    case ConditionTag::Banach:
    case ConditionTag::Ciric:
    case ConditionTag::Kannan:
    case ConditionTag::Chatterjea:
      cond["k"] = doc.instance.condition.k;
      break;
    case ConditionTag::RationalSum:
      cond["a"] = doc.instance.condition.a;
      cond["b"] = doc.instance.condition.b;
      cond["c"] = doc.instance.condition.c;
      break;
    default:
      break;
  }
  j["condition"] = std::move(cond);

  json th = json::array();
  for (TheoremId id : doc.theorems) th.push_back(theorem_name(id));
  j["theorems"] = std::move(th);

  json solver;
  if (doc.solver.x0) solver["x0"] = *doc.solver.x0;
  solver["max_iters"] = doc.solver.max_iters;
  solver["tol"] = doc.solver.tol;
  j["solver"] = std::move(solver);

  json budgets;
  budgets["pair_budget"] = doc.budgets.pair_budget;
  budgets["series_terms"] = doc.budgets.series_terms;
  budgets["seed"] = doc.budgets.seed;
  j["budgets"] = std::move(budgets);

  return j.dump(2) + "\n";
}

InstanceDocument builtin_instance(const std::string& id) {
  if (id == "4.1") {
    auto x = std::make_shared<const MetricSpace>(
        MetricSpace::intervals(IntervalUnion({Interval::open(-1, 4)})));
    auto y = std::make_shared<const MetricSpace>(
        MetricSpace::intervals(IntervalUnion({Interval::make(-0.5, 2, true, false)})));
    SelfMap f = SelfMap::piecewise(
        x, {{Interval::make(-1, 2, false, true), 0.5, 0}, {Interval::make(2, 4, false, false), 0, 1}});
    InstanceDocument doc{"example4.1",
                         make_instance(x, Relation::geq(x), std::move(f), Condition::phi_m(),
                                       ComparisonFunction::linear(0.5), y),
                         {TheoremId::T2_1, TheoremId::T2_5, TheoremId::T2_7, TheoremId::T1_17,
                          TheoremId::C2_2},
                         {},
                         {}};
    doc.solver.x0 = 1;
    return doc;
  }
  if (id == "4.2") {
    auto x = std::make_shared<const MetricSpace>(
        MetricSpace::intervals(IntervalUnion({Interval::make(0, 3, true, false)})));
    auto y = std::make_shared<const MetricSpace>(
        MetricSpace::intervals(IntervalUnion({Interval::closed(0, 1)})));
    SelfMap f = SelfMap::piecewise(
        x, {{Interval::closed(0, 1), 0, 0}, {Interval::make(1, 3, false, false), 0, 1}});
    Relation r = Relation::pair_list(x, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 2}});
    InstanceDocument doc{"example4.2",
                         make_instance(x, std::move(r), std::move(f), Condition::phi_n(),
                                       ComparisonFunction::linear(0.75), y),
                         {TheoremId::C2_8, TheoremId::T1_17},
                         {},
                         {}};
    doc.solver.x0 = 1;
    return doc;
  }
  if (id == "4.3") {
    auto x = std::make_shared<const MetricSpace>(
        MetricSpace::intervals(IntervalUnion({Interval::closed(0, 4)})));
    SelfMap f = SelfMap::piecewise(x, {{Interval::make(0, 1, true, false), 0, 0},
                                       {Interval::make(1, 2, true, false), 0, 3},
                                       {Interval::closed(2, 4), 0, 4}});
    Relation r = Relation::pair_list(x, {{0, 0}, {1, 1}, {3, 3}, {4, 4}, {1, 2}, {3, 4}});
    return InstanceDocument{"example4.3",
                            make_instance(x, std::move(r), std::move(f), Condition::phi_m(),
                                          ComparisonFunction::linear(0.75)),
                            {TheoremId::T2_1, TheoremId::T1_18, TheoremId::T2_5, TheoremId::T2_7},
                            {},
                            {}};
  }
  throw std::invalid_argument("unknown builtin instance '" + id + "' (known: 4.1, 4.2, 4.3)");
}

std::vector<std::string> builtin_ids() { return {"4.1", "4.2", "4.3"}; }

std::string data_directory() {
  if (const char* env = std::getenv("RELFIX_DATA_DIR")) return env;
#ifdef RELFIX_DATA_DIR
  return RELFIX_DATA_DIR;
#else
  return "instances";
#endif
}

} // namespace relfix
