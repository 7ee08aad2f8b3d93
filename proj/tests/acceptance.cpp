// Acceptance gate: runs the verification matrix with its default options and
// prints one verdict line per criterion.  A criterion passes when its check
// holds AND its wall time stays inside the budget.  Exit status is the number
// of failing criteria.

#include <array>
#include <cstdio>

#include "clocus/verification.hpp"

int main() {
  constexpr std::array<double, 11> kBudgetSeconds{
      0.001,  // expected invariants are closed-form arithmetic
      30.0,   // measured invariants over GF(p), 5 cases x 3 seeds
      5.0,    // center containment on the same samples
      5.0,    // Grassmann tensor trials
      60.0,   // bounds classifier sweep + singular control
      30.0,   // singular linear space of a trifocal setup
      1.0,    // Pluecker identity trials
      60.0,   // construction round-trips
      30.0,   // residual twisted cubic geometry
      60.0,   // small-field smoothness survey
      5.0,    // Hilbert function vs naive oracle
  };

  const std::vector<clocus::CheckResult> results =
      clocus::classificationSuite();
  if (results.size() != kBudgetSeconds.size()) {
    std::fprintf(stderr, "expected %zu criteria, suite returned %zu\n",
                 kBudgetSeconds.size(), results.size());
    return 64;
  }

  int failures = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const clocus::CheckResult& r = results[i];
    const bool inBudget = r.seconds < kBudgetSeconds[i];
    const bool ok = r.passed && inBudget;
    if (!ok) ++failures;
    std::printf("%s  %s (%.3fs %s %.3fs)  %s\n", ok ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, inBudget ? "<" : ">=",
                kBudgetSeconds[i], r.detail.c_str());
  }
  return failures;
}
