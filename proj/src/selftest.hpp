#pragma once

#include <string>
#include <vector>

namespace nilred {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Built-in verification suite: the classification agreement sweep, the
/// 11-dimensional headline pair, the flat-factor example, the bracket/j and
/// Heisenberg-type identities, the isotypic oracle, the curvature oracle,
/// and the composition-algebra laws. Runs in exact arithmetic.
std::vector<CriterionResult> run_selftest();

bool selftest_passed(const std::vector<CriterionResult>& results);

std::string render_selftest(const std::vector<CriterionResult>& results, bool as_json);

}  // namespace nilred
