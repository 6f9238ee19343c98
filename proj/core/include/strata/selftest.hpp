#ifndef STRATA_SELFTEST_HPP
#define STRATA_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "strata/reduce.hpp"

namespace strata {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full verification suite (the CLI `selftest` and the acceptance
/// runner share it), one entry per criterion. `which` empty means all.
std::vector<CriterionResult> runAcceptance(const SolverOptions& opt, std::ostream& log,
                                           const std::vector<int>& which = {});

}  // namespace strata

#endif  // STRATA_SELFTEST_HPP
