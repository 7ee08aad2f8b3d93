#ifndef CLOCUS_VERIFICATION_HPP
#define CLOCUS_VERIFICATION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace clocus {

// One verdict of the verification matrix.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;  // wall time spent producing this verdict
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  // Prime used for invariant measurements: Hilbert functions, containment,
  // tensor trials, line slicing.  Surveys that enumerate rational points
  // always run over GF(11) on a fixed seed schedule, so the suite stays a
  // deterministic regression gate regardless of these knobs.
  std::uint32_t measurePrime = 32003;
};

// Runs through the verification matrix, in order: expected invariants,
// measured invariants, center containment, Grassmann tensor vanishing, the
// bounds classifier sweep plus its singular control, the singular space of
// trifocal setups, the Pluecker identity, construction round-trips, the
// residual twisted cubic, the small-field smoothness survey, and the
// Hilbert function oracle.  One result per check.
std::vector<CheckResult> classificationSuite(const SuiteOptions& options = {});

}  // namespace clocus

#endif  // CLOCUS_VERIFICATION_HPP
