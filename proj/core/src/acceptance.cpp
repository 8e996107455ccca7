#include "fraclab/acceptance.hpp"

namespace fraclab {

std::string to_string(AcceptanceTier tier) {
  return tier == AcceptanceTier::kFast ? "fast" : "full";
}

AcceptanceReport run_acceptance_suite(AcceptanceTier tier, int threads) {
  (void)threads;
  AcceptanceReport report;
  report.tier = tier;
  return report;
}

}  // namespace fraclab
