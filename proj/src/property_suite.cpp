#include "relfix/property_suite.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "relfix/checker.hpp"
#include "relfix/numeric.hpp"

namespace relfix {

namespace {

using Mutation = PropertyOptions::Mutation;

// Generated data stays on a dyadic grid (multiples of 1/2, distances and
// their halves multiples of 1/4) so every inequality below is decided by
// exact floating-point arithmetic rather than tolerances.
struct CaseData {
  std::vector<double> points; // sorted, distinct
  std::vector<double> matrix; // row-major n*n, empty = usual metric
  std::vector<std::pair<double, double>> map_entries;
  std::vector<std::pair<double, double>> rel_pairs;
  double k = 0.5;
};

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t m) { return rng() % m; }

CaseData generate(std::mt19937_64& rng) {
  CaseData c;
  std::size_t n = 2 + draw(rng, 5);

  double grid[11];
  for (int i = 0; i < 11; ++i) grid[i] = 0.5 * i;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + draw(rng, 11 - i);
    std::swap(grid[i], grid[j]);
    c.points.push_back(grid[i]);
  }
  std::sort(c.points.begin(), c.points.end());

  if (draw(rng, 4) == 0) {
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double v = 0.5 * (1 + draw(rng, 8));
        w[i * n + j] = v;
        w[j * n + i] = v;
      }
    for (std::size_t k2 = 0; k2 < n; ++k2)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          w[i * n + j] = std::min(w[i * n + j], w[i * n + k2] + w[k2 * n + j]);
    c.matrix = std::move(w);
  }

  bool constant = draw(rng, 10) < 4;
  double target = c.points[draw(rng, n)];
  for (std::size_t i = 0; i < n; ++i)
    c.map_entries.push_back({c.points[i], constant ? target : c.points[draw(rng, n)]});

  auto f_of = [&](double x) {
    for (const auto& [a, b] : c.map_entries)
      if (a == x) return b;
    return x;
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (draw(rng, 100) < 25) c.rel_pairs.push_back({c.points[i], c.points[j]});
  if (draw(rng, 10) < 7) {
    double x0 = c.points[draw(rng, n)];
    c.rel_pairs.push_back({x0, f_of(x0)});
  }
  if (draw(rng, 10) < 6) {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::pair<double, double>> add;
      for (const auto& [a, b] : c.rel_pairs) {
        std::pair<double, double> im{f_of(a), f_of(b)};
        if (std::find(c.rel_pairs.begin(), c.rel_pairs.end(), im) == c.rel_pairs.end() &&
            std::find(add.begin(), add.end(), im) == add.end())
          add.push_back(im);
      }
      if (!add.empty()) {
        grew = true;
        c.rel_pairs.insert(c.rel_pairs.end(), add.begin(), add.end());
      }
    }
  }
  if (c.rel_pairs.empty()) c.rel_pairs.push_back({c.points[0], c.points[0]});
  std::sort(c.rel_pairs.begin(), c.rel_pairs.end());
  c.rel_pairs.erase(std::unique(c.rel_pairs.begin(), c.rel_pairs.end()), c.rel_pairs.end());

  const double ks[] = {0, 0.25, 0.5, 0.75, 0.9};
  c.k = ks[draw(rng, 5)];
  return c;
}

struct Built {
  std::shared_ptr<const MetricSpace> space;
  SelfMap map;
  Relation rel;
  ContractionInstance with_m4;
  ContractionInstance with_n3;
};

Built build(const CaseData& c) {
  auto space = std::make_shared<const MetricSpace>(
      c.matrix.empty()
          ? MetricSpace::finite(c.points)
          : MetricSpace::finite(c.points, DistanceMatrix(c.points.size(), c.matrix)));
  SelfMap map = SelfMap::table(space, c.map_entries);
  Relation rel = Relation::pair_list(space, c.rel_pairs);
  auto phi = ComparisonFunction::linear(c.k);
  ContractionInstance m4 = make_instance(space, rel, map, Condition::phi_m(), phi);
  ContractionInstance n3 = make_instance(space, rel, map, Condition::phi_n(), phi);
  return Built{space, std::move(map), std::move(rel), std::move(m4), std::move(n3)};
}

// Independent recomputation of the displacement envelopes; the mutation hook
// drops the plain-distance term from the three-term form to prove the suite
// notices a faulty envelope.
double oracle_m4(const MetricSpace& s, const SelfMap& f, double x, double y) {
  double fx = f.apply(x), fy = f.apply(y);
  double t = s.distance(x, y);
  t = std::max(t, s.distance(x, fx));
  t = std::max(t, s.distance(y, fy));
  return std::max(t, (s.distance(x, fy) + s.distance(y, fx)) / 2);
}

double oracle_n3(const MetricSpace& s, const SelfMap& f, double x, double y, Mutation mut) {
  double fx = f.apply(x), fy = f.apply(y);
  double own = (s.distance(x, fx) + s.distance(y, fy)) / 2;
  double cross = (s.distance(x, fy) + s.distance(y, fx)) / 2;
  double t = std::max(own, cross);
  if (mut == Mutation::DropEnvelopeTerm) return t;
  return std::max(s.distance(x, y), t);
}

std::string render_case(const CaseData& c) {
  std::string s = "points {";
  for (std::size_t i = 0; i < c.points.size(); ++i)
    s += (i ? ", " : "") + format_number(c.points[i]);
  s += "}, map {";
  for (std::size_t i = 0; i < c.map_entries.size(); ++i)
    s += (i ? ", " : "") + format_number(c.map_entries[i].first) + " -> " +
         format_number(c.map_entries[i].second);
  s += "}, pairs {";
  for (std::size_t i = 0; i < c.rel_pairs.size(); ++i)
    s += (i ? ", " : "") + ("(" + format_number(c.rel_pairs[i].first) + ", " +
                            format_number(c.rel_pairs[i].second) + ")");
  s += "}, phi k=" + format_number(c.k);
  if (!c.matrix.empty()) s += ", explicit distance table";
  return s;
}

std::string pair_witness(double x, double y) {
  return "witness (" + format_number(x) + ", " + format_number(y) + ")";
}

// Runs every invariant on one case; returns the first violation found.
std::optional<std::string> check_case(const CaseData& c, Mutation mut, std::size_t& checks) {
  Built b = build(c);
  const MetricSpace& sp = *b.space;
  const std::vector<double>& pts = c.points;
  Relation closure = symmetric_closure(b.rel);

  for (double x : pts) {
    for (double y : pts) {
      double m = ciric_max4(sp, b.map, x, y);
      double n = ciric_max3(sp, b.map, x, y);
      ++checks;
      if (!(n <= m))
        return "check=envelope-order: three-term envelope exceeds the four-term one, " +
               pair_witness(x, y) + " [lhs=" + format_number(n) + ", rhs=" + format_number(m) +
               "]";
      ++checks;
      if (m != oracle_m4(sp, b.map, x, y))
        return "check=envelope-oracle: four-term envelope mismatch, " + pair_witness(x, y) +
               " [library=" + format_number(m) +
               ", oracle=" + format_number(oracle_m4(sp, b.map, x, y)) + "]";
      ++checks;
      if (n != oracle_n3(sp, b.map, x, y, mut))
        return "check=envelope-oracle: three-term envelope mismatch, " + pair_witness(x, y) +
               " [library=" + format_number(n) +
               ", oracle=" + format_number(oracle_n3(sp, b.map, x, y, mut)) + "]";
      ++checks;
      if (sym_related(b.rel, x, y) != related(closure, x, y))
        return "check=closure-pairs: one-sided relatedness disagrees with the symmetric "
               "closure, " +
               pair_witness(x, y);
    }
    double fx = b.map.apply(x);
    double step_max = std::max(sp.distance(x, fx), sp.distance(fx, b.map.apply(fx)));
    ++checks;
    if (!(ciric_max4(sp, b.map, x, fx) <= step_max))
      return "check=envelope-step-bound: envelope of (x, fx) exceeds the larger adjacent "
             "displacement, " +
             pair_witness(x, fx) + " [lhs=" + format_number(ciric_max4(sp, b.map, x, fx)) +
             ", rhs=" + format_number(step_max) + "]";
  }

  ++checks;
  Verdict agree = check_closure_agreement(b.with_m4);
  if (!agree.passes())
    return "check=closure-check-agreement: " + agree.note +
           (agree.witness ? "; " + pair_witness(agree.witness->points[0],
                                                agree.witness->points.size() > 1
                                                    ? agree.witness->points[1]
                                                    : agree.witness->points[0])
                          : std::string());

  ContractionOutcome banach =
      check_contraction_as(b.with_m4, b.rel, Condition::banach(c.k), std::nullopt);
  ContractionOutcome ciric =
      check_contraction_as(b.with_m4, b.rel, Condition::ciric(c.k), std::nullopt);
  ContractionOutcome phi_m = check_contraction(b.with_m4);
  ++checks;
  if (banach.verdict.passes() && !ciric.verdict.passes())
    return "check=condition-ordering: plain-distance bound holds but the three-term-envelope "
           "bound does not, k=" +
           format_number(c.k) +
           (ciric.verdict.witness
                ? "; " + pair_witness(ciric.verdict.witness->points[0],
                                      ciric.verdict.witness->points[1])
                : std::string());
  ++checks;
  if (ciric.verdict.passes() && !phi_m.verdict.passes())
    return "check=condition-ordering: three-term-envelope bound holds but the four-term "
           "phi-form does not, k=" +
           format_number(c.k) +
           (phi_m.verdict.witness
                ? "; " + pair_witness(phi_m.verdict.witness->points[0],
                                      phi_m.verdict.witness->points[1])
                : std::string());

  PointSet fixed = fixed_points(b.map);
  const TheoremId m4_bundles[] = {TheoremId::T2_1, TheoremId::C2_2, TheoremId::C2_3};
  const TheoremId n3_bundles[] = {TheoremId::T1_17, TheoremId::C2_4, TheoremId::T2_5,
                                  TheoremId::T2_7,  TheoremId::C2_8, TheoremId::C3_10};
  auto sound = [&](const ContractionInstance& inst,
                   const TheoremId* ids, std::size_t count) -> std::optional<std::string> {
    for (std::size_t i = 0; i < count; ++i) {
      HypothesisReport r = check_hypotheses(inst, ids[i]);
      ++checks;
      if (!r.overall.passes()) continue;
      if (!fixed.size() || *fixed.size() == 0)
        return std::string("check=existence-soundness: every hypothesis of ") +
               theorem_name(ids[i]) + " holds but the fixed-point set is empty";
      if (!r.conclusion || !r.conclusion->passes())
        return std::string("check=existence-soundness: every hypothesis of ") +
               theorem_name(ids[i]) + " holds but the conclusion check grades " +
               (r.conclusion ? to_string(r.conclusion->grade) : "absent");
      if (conclusion_kind(ids[i]) == ConclusionKind::ExistenceUnique && *fixed.size() != 1)
        return std::string("check=uniqueness-soundness: every hypothesis of ") +
               theorem_name(ids[i]) + " holds but F(f) = " + fixed.to_string();
    }
    return std::nullopt;
  };
  if (auto bad = sound(b.with_m4, m4_bundles, 3)) return bad;
  if (auto bad = sound(b.with_n3, n3_bundles, 6)) return bad;

  if (phi_m.verdict.passes() && is_f_closed(b.rel, b.map).passes()) {
    AdmissibleStarts starts = compute_admissible_starts(sp, b.rel, b.map);
    if (starts.witness) {
      Orbit orbit = picard(b.map, *starts.witness);
      if (orbit.displacements.size() > 1) {
        ++checks;
        Verdict bound = check_displacement_bound(orbit, ComparisonFunction::linear(c.k));
        if (!bound.passes())
          return "check=displacement-bound: orbit from " + format_number(*starts.witness) +
                 " violates d(x_n, x_n+1) <= phi^n(d(x_0, x_1)); " + bound.note;
      }
    }
  }

  return std::nullopt;
}

// Greedy structural shrink: drop points (with their map entries and pairs)
// and then pairs, keeping each removal only if the failure persists.
CaseData shrink(CaseData c, Mutation mut) {
  std::size_t scratch = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = c.points.size(); i-- > 0 && c.points.size() > 2;) {
      double p = c.points[i];
      bool targeted = false;
      for (const auto& [a, b] : c.map_entries)
        if (a != p && b == p) targeted = true;
      if (targeted) continue;
      CaseData cand = c;
      std::size_t n = c.points.size();
      cand.points.erase(cand.points.begin() + i);
      if (!c.matrix.empty()) {
        cand.matrix.clear();
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t col = 0; col < n; ++col)
            if (r != i && col != i) cand.matrix.push_back(c.matrix[r * n + col]);
      }
      cand.map_entries.clear();
      for (const auto& e : c.map_entries)
        if (e.first != p) cand.map_entries.push_back(e);
      cand.rel_pairs.clear();
      for (const auto& pr : c.rel_pairs)
        if (pr.first != p && pr.second != p) cand.rel_pairs.push_back(pr);
      if (cand.rel_pairs.empty()) continue;
      if (check_case(cand, mut, scratch)) {
        c = std::move(cand);
        progress = true;
      }
    }
    for (std::size_t i = c.rel_pairs.size(); i-- > 0 && c.rel_pairs.size() > 1;) {
      CaseData cand = c;
      cand.rel_pairs.erase(cand.rel_pairs.begin() + i);
      if (check_case(cand, mut, scratch)) {
        c = std::move(cand);
        progress = true;
      }
    }
  }
  return c;
}

} // namespace

PropertyResult run_property_suite(const PropertyOptions& opts) {
  PropertyResult result;
  std::mt19937_64 rng(opts.seed);
  for (std::size_t i = 0; i < opts.cases; ++i) {
    CaseData c = generate(rng);
    ++result.cases_run;
    std::optional<std::string> bad = check_case(c, opts.mutation, result.checks_run);
    if (bad) {
      CaseData small = shrink(c, opts.mutation);
      std::size_t scratch = 0;
      std::optional<std::string> msg = check_case(small, opts.mutation, scratch);
      result.ok = false;
      result.failure = "seed=" + std::to_string(opts.seed) + " case=" + std::to_string(i) + " " +
                       (msg ? *msg : *bad) + "; shrunken instance: " + render_case(small);
      if (opts.log) *opts.log << result.failure << "\n";
      return result;
    }
    if (opts.log && (i + 1) % 100 == 0)
      *opts.log << "cases " << (i + 1) << "/" << opts.cases << " ok, checks " << result.checks_run
                << "\n";
  }
  return result;
}

} // namespace relfix
