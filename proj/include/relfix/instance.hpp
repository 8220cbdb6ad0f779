#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relfix/checker.hpp"
#include "relfix/contraction.hpp"

namespace relfix {

struct SolverSettings {
  std::optional<double> x0;
  std::size_t max_iters = kDefaultMaxIters;
  double tol = kDefaultTol;
};

struct Budgets {
  std::size_t pair_budget = kDefaultPairBudget;
  std::size_t series_terms = kDefaultSeriesTerms;
  std::uint64_t seed = 1;
};

// One instance document: the assembled problem plus the knobs the CLI needs.
struct InstanceDocument {
  std::string name;
  ContractionInstance instance;
  std::vector<TheoremId> theorems; // default bundle list for `check`
  SolverSettings solver;
  Budgets budgets;
};

// Structured parse/validation failure with a position: line/column for
// syntax errors, a JSON-pointer-style path for semantic ones.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::string where, int line = 0, int column = 0);
  const std::string& message() const { return message_; }
  const std::string& where() const { return where_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string message_;
  std::string where_;
  int line_ = 0;
  int column_ = 0;
};

// Strict JSON reader: unknown keys, malformed intervals, out-of-range
// parameters, non-self-maps, and inclusion violations are all rejected with
// a positioned diagnostic. Never crashes on arbitrary input text.
InstanceDocument parse_instance(const std::string& text, const std::string& source_name = "<input>");
InstanceDocument load_instance_file(const std::string& path);

// Canonical serialization; parse(serialize(doc)) reproduces the document.
std::string serialize_instance(const InstanceDocument& doc);

// Bundled worked instances, ids "4.1", "4.2", "4.3" (constructed in code;
// the shipped JSON documents under instances/ are the same instances).
InstanceDocument builtin_instance(const std::string& id);
std::vector<std::string> builtin_ids();

// Where the shipped instance documents and golden reports live; honors the
// RELFIX_DATA_DIR environment variable, falling back to the build-time path.
std::string data_directory();

} // namespace relfix
