#pragma once

#include <string>
#include <vector>

namespace fracwave {

enum class CheckStatus { Pass, Fail, Skip };

// One quantitative property check. Every check records the grid resolution it
// ran at and the tolerance it was judged against, plus a plain-language
// statement of the law being verified.
struct Check {
  std::string name;       // short machine-friendly identifier
  CheckStatus status = CheckStatus::Skip;
  double measured = 0;    // the measured quantity (margin, error, exponent, ...)
  double threshold = 0;   // the tolerance/threshold the measurement was judged against
  std::string law;        // what property this verifies, in words
  std::string note;       // extra context (skip reason, fitted constants, ...)
  int grid_n = 0;         // grid resolution the check ran at (0 = not grid-based)
};

struct DiagnosticsReport {
  std::string subject;          // what was checked (e.g. "fkdv branch point, step 17")
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return true;
  }
  int num_failed() const {
    int k = 0;
    for (const auto& c : checks) k += (c.status == CheckStatus::Fail) ? 1 : 0;
    return k;
  }
  void append(const DiagnosticsReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

// Deterministic single-line rendering of one check, used by report files.
std::string format_check(const Check& c);

// Multi-line rendering of a whole report (no timestamps).
std::string format_report(const DiagnosticsReport& r);

}  // namespace fracwave
