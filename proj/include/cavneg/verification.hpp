#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cavneg {

enum class VerificationLevel { Fast, Full };

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string relation = "<=";  // how measured is compared to threshold
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

struct VerificationOptions {
  // Multiplies a_{1,1} in the 2x2 block check. Anything far from 1 must make
  // that check fail; used to test the checker itself.
  double a11_scale = 1.0;
};

/// fast: n_max = 500, 16 phase points per scenario.
/// full: n_max = 2000 with a doubling check, 64-point grids, k = 1..4 and
///       massive M in {0, 10, 1000}.
VerificationReport run_verification(VerificationLevel level, const VerificationOptions& opts = {});

void print_report(std::ostream& os, const VerificationReport& report);

}  // namespace cavneg
