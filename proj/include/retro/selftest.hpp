#pragma once

#include <string>
#include <vector>

namespace retro {

struct CheckResult {
  std::string id;
  std::string title;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Runs the acceptance criteria A1-A11 end to end.
std::vector<CheckResult> run_selftest();

}  // namespace retro
