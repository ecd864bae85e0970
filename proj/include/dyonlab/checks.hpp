#pragma once

#include <cstdint>
#include <string>
#include <vector>

// One-shot runner for the library's invariants, grouped by module. The CLI
// `check` subcommand prints one line per invariant and fails if any fails.

namespace dyonlab {

struct CheckResult {
  std::string group;
  std::string name;
  bool pass = false;
  std::string detail;  // measured worst deviation vs the pinned tolerance
};

// suite: one of {units, phase, gauge, vacua, dynamics, scattering, fast, all}.
// "fast" skips the wave-packet runs in the dynamics group; "all" runs
// everything. Unknown suite -> std::invalid_argument.
std::vector<CheckResult> run_checks(const std::string& suite,
                                    std::uint64_t seed);

}  // namespace dyonlab
