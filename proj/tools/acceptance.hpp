#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace acool {

struct AcceptOptions {
  bool quick = false;
  /// Seeds per grid point; 0 keeps the default (200, or 20 with quick).
  std::size_t seeds = 0;
  /// Criteria to run; empty runs all nine.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CriterionResult> acceptance(const AcceptOptions& opt, std::ostream* progress = nullptr);

/// Runs the suite, prints one line per criterion plus a summary, and returns true when all pass.
bool run_acceptance(const AcceptOptions& opt, std::ostream& os);

}  // namespace acool
