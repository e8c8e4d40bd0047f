#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mixest {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Reduced-size runs of the library's property checks: score identities,
/// splitting monotonicity, plane projection, planar search against the
/// projective optimum, pinching, permutation symmetry and simulation agreement.
std::vector<SelftestCheck> run_selftest(std::uint64_t seed, int cases = 100);

void print_selftest(std::ostream& os, const std::vector<SelftestCheck>& checks);

}  // namespace mixest
