#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qfim::app {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<SuiteResult> suites;

  bool all_passed() const {
    for (const auto& s : suites) {
      if (!s.passed) return false;
    }
    return true;
  }
};

// Runs the invariant suites (CPTP + mutation guard, state validity, channel
// closed-form equivalence, QFI formula equivalence, derivative providers,
// noise monotonicity, zero-at-r=0) over `samples` seeded random draws,
// printing one PASS/FAIL line per suite to `log`.
ValidationReport run_validation(std::uint64_t seed, int samples,
                                std::ostream& log);

}  // namespace qfim::app
