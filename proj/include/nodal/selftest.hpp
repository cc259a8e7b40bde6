#pragma once

#include <string>
#include <vector>

namespace nodal::selftest {

// Outcome of one property suite: a stable kebab-case name, whether every
// check in it passed, and a one-line summary (counts on success, the first
// failing property otherwise).
struct Result {
  std::string name;
  bool pass;
  std::string detail;
};

/// Runs every brute-force property suite at toy parameters: modular and
/// polynomial substrate checks, the Cantor-algorithm cross-check of the
/// group law, the full Cayley table and element count over F_7, group-order
/// annihilation on both twists, and demo-key encryption round trips. Always
/// returns one Result per suite; an unexpected exception inside a suite is
/// reported as a failure, never thrown. Runs in seconds.
std::vector<Result> run_all();

}  // namespace nodal::selftest
