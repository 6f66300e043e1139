#pragma once

#include <string>
#include <vector>

#include "relkit/config.hpp"

namespace relkit {

enum class VerifyLevel { quick, full };

// One acceptance criterion: a named batch of exact checks with a runtime
// budget.  `passed` requires every check to hold and the batch to finish
// within budget; `detail` carries the first failure or a summary count.
struct CriterionResult {
  int number = 0;
  std::string name;
  bool checks_ok = false;
  bool within_budget = false;
  int checks = 0;          // assertions evaluated
  int skipped = 0;         // sub-checks skipped at this level
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;

  bool passed() const { return checks_ok && within_budget; }
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::full;
  std::vector<CriterionResult> results;
  bool all_passed() const;
};

// The ten-criterion battery.  quick restricts each criterion to its
// degree <= 8 sub-checks (seconds overall); full runs everything, including
// the degree 10-11 backtrack work.
VerifyReport verify_battery(VerifyLevel level, const Config& cfg = {});

}  // namespace relkit
