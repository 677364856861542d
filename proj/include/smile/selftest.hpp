#pragma once

// Analytic identities checked on random fixtures: surprise decompositions,
// the impact identity, the plausible-rule property, monotonicity in gamma and
// the closed-form CEO values.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace smile {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // worst deviation or first counterexample
};

inline constexpr int kSelftestFixtures = 1000;

std::vector<SelftestCheck> run_selftest(std::uint64_t seed = 0,
                                        int fixtures = kSelftestFixtures);

// One "PASS name (detail)" / "FAIL ..." line per check. True iff all pass.
bool print_selftest(std::ostream& out, const std::vector<SelftestCheck>& checks);

}  // namespace smile
