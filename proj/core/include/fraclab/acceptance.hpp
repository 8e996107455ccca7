#pragma once

#include <string>
#include <vector>

namespace fraclab {

enum class AcceptanceTier { kFast, kFull };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double runtime_seconds = 0.0;
  std::string detail;     // human-readable measured values
  std::string canonical;  // full-precision serialization, used by the determinism check
};

struct AcceptanceReport {
  AcceptanceTier tier = AcceptanceTier::kFull;
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
};

/// Runs the acceptance suite. The fast tier reduces sample counts and radii;
/// the full tier runs everything at the stated tolerances. The determinism
/// criterion re-runs every computation and byte-compares the canonical
/// serializations.
AcceptanceReport run_acceptance_suite(AcceptanceTier tier, int threads = 0);

std::string to_string(AcceptanceTier tier);

}  // namespace fraclab
