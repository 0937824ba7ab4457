#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gradedirac/dsl/parser.hpp"
#include "gradedirac/dsl/report.hpp"

namespace gradedirac::dsl {

struct RunOptions {
  std::string source;
  std::uint64_t seed = 0;
  int cases = 100;
  std::optional<int> bound;  // default degree bound for closed-section searches
  bool timing = false;
  bool compute_only = false;  // skip check directives
};

// Executes directives in order. Runtime errors become failing entries
// positioned at their directive.
Report run(const Document& doc, const RunOptions& options);

}  // namespace gradedirac::dsl
