#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qps::verify {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

// All acceptance checks, in order. Every tolerance is pinned in the
// implementation; `names` selects a subset (empty = all).
std::vector<CheckResult> run_checks(const std::vector<std::string>& names = {});
std::vector<std::string> check_names();

// Runs and prints one PASS/FAIL line per check; returns the failure count.
int run_and_print(std::ostream& os, const std::vector<std::string>& names = {});

}  // namespace qps::verify
