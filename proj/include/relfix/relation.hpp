#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relfix/point_set.hpp"
#include "relfix/selfmap.hpp"
#include "relfix/space.hpp"
#include "relfix/verdict.hpp"

namespace relfix {

// Supported binary relations on a carrier. Geq/Leq/Universal are intensional
// (membership decided by formula); PairList is an explicit finite edge set.
enum class RelationKind { Geq, Leq, Universal, PairList };

class Relation {
 public:
  static Relation geq(std::shared_ptr<const MetricSpace> carrier);
  static Relation leq(std::shared_ptr<const MetricSpace> carrier);
  static Relation universal(std::shared_ptr<const MetricSpace> carrier);
  // Pairs are validated against the carrier, then sorted and deduplicated.
  static Relation pair_list(std::shared_ptr<const MetricSpace> carrier,
                            std::vector<std::pair<double, double>> pairs);

  RelationKind kind() const { return kind_; }
  const std::vector<std::pair<double, double>>& pairs() const { return pairs_; }
  const MetricSpace& carrier() const { return *carrier_; }
  std::shared_ptr<const MetricSpace> carrier_ptr() const { return carrier_; }

  // Points occurring in some pair (sorted, unique). Empty for intensional kinds.
  const std::vector<double>& support() const { return support_; }

  std::string describe() const;

 private:
  Relation() = default;
  RelationKind kind_ = RelationKind::Universal;
  std::shared_ptr<const MetricSpace> carrier_;
  std::vector<std::pair<double, double>> pairs_;
  std::vector<double> support_;
};

// A finite relational chain x = z0, z1, ..., zl = y with every consecutive
// pair related; length() is the edge count l >= 1.
struct Path {
  std::vector<double> nodes;
  std::size_t length() const { return nodes.size() - 1; }
};

Relation inverse(const Relation& r);
Relation symmetric_closure(const Relation& r); // Geq/Leq close to Universal

// Exact membership tests; both throw when a point is outside the carrier.
bool related(const Relation& r, double x, double y);
bool sym_related(const Relation& r, double x, double y); // (x,y) or (y,x)

// Is every pair of `domain` related one way or the other? Geq/Leq/Universal
// hold by totality; PairList reduces to finite enumeration and fails with the
// first unrelated pair (a continuum domain necessarily contains a point
// outside the finite support).
Verdict is_complete_relation(const Relation& r, const PointSet& domain);

// Does (x,y) related imply (f(x), f(y)) related? PairList enumerates edges
// exhaustively; Geq/Leq reduce exactly to global monotonicity of the
// piecewise map; Universal holds by rule.
Verdict is_f_closed(const Relation& r, const SelfMap& f);

// Is every consecutive pair of this finite sequence related?
bool is_preserving(const Relation& r, std::span<const double> seq);

// If a relation-preserving sequence in Y converges, must some subsequence be
// related to its limit? Provably unconditional for all four kinds:
// non-increasing (resp. non-decreasing) convergent sequences sit above
// (below) their limit, and PairList-preserving convergent sequences are
// eventually constant with the constant pair in the relation.
Verdict is_d_self_closed(const Relation& r, const MetricSpace& y);

// Does every pair from `domain` have a common successor z with (x,z) and
// (y,z) related (symmetrically related when use_symmetric)? Geq/Leq use
// z = min/max of the pair; for PairList the search over support plus
// candidate pool is complete, because any related z must occur in the pair
// list, so failure is decisive and carries the unwitnessed pair.
Verdict is_directed(const Relation& r, const PointSet& domain, bool use_symmetric,
                    const std::vector<double>& candidate_pool = {});

// Shortest relational chain from x to y (BFS over {x, y} + support for
// PairList; direct membership test otherwise). max_len must be positive.
std::optional<Path> find_path(const Relation& r, double x, double y, std::size_t max_len);

// Default chain-length cap: 2 * |support| + 1.
std::size_t default_path_cap(const Relation& r);

} // namespace relfix
