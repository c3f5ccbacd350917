#pragma once

#include <string>
#include <vector>

namespace chiral_sta {

// Fast analytic-identity suite: pulse areas, schedule boundary conditions,
// derivative consistency, frame orthonormality/completeness, adiabatic
// eigen-identities, chosen-path decoupling residuals, frame boundary
// coincidence. Every check is a closed-form identity evaluated numerically,
// so the whole suite runs in well under a second.
struct VerifyCheck {
  std::string name;
  double value = 0.0;      // measured residual / deviation
  double threshold = 0.0;  // pass iff value < threshold
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Test hook: deliberately corrupt the counterdiabatic pulse pair inside the
// residual checks, which must make them fail. Validates that the verifier
// actually detects broken pulses.
enum class VerifyMutation { None, FlipCounterdiabaticSign };

VerifyReport run_verification(VerifyMutation mutation = VerifyMutation::None);

}  // namespace chiral_sta
