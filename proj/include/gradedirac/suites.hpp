#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gradedirac/verdict.hpp"

namespace gradedirac {

// Randomized property suites shared by the CLI and the acceptance runner.
struct SuiteOptions {
  std::uint64_t seed = 0;
  int cases = 100;
  std::map<std::string, int> params;  // suite-specific knobs, e.g. n, m, degree

  int param(const std::string& key, int fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

struct SuiteOutcome {
  std::string name;
  Verdict verdict;
  int cases = 0;
};

// sn-identities, graph-theorem, linear-roundtrip, auxiliary-lemma,
// poisson-properties, currents-symbolic, antirep, conservation.
const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for unknown names.
SuiteOutcome run_suite(const std::string& name, const SuiteOptions& options);

SuiteOutcome sn_identity_suite(const SuiteOptions& options);
SuiteOutcome graph_theorem_suite(const SuiteOptions& options);
SuiteOutcome linear_roundtrip_suite(const SuiteOptions& options);
SuiteOutcome auxiliary_lemma_suite(const SuiteOptions& options);
// params: n, m (canonical field chart), degree (coefficient degree).
SuiteOutcome poisson_properties_suite(const SuiteOptions& options);
// params: n, m, degree. Generic A, B, H with parameter coefficients.
SuiteOutcome currents_symbolic_suite(const SuiteOptions& options);
SuiteOutcome antirep_suite(const SuiteOptions& options);
SuiteOutcome conservation_suite(const SuiteOptions& options);

}  // namespace gradedirac
