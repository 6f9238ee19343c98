#include "strata/selftest.hpp"

#include <ostream>

namespace strata {

std::vector<CriterionResult> runAcceptance(const SolverOptions& opt, std::ostream& log,
                                           const std::vector<int>& which) {
  (void)opt;
  (void)log;
  (void)which;
  return {};
}

}  // namespace strata
