#include <iostream>

#include "strata/selftest.hpp"

int main(int argc, char** argv) {
  strata::SolverOptions opt;
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  auto results = strata::runAcceptance(opt, std::cerr, which);
  bool allPass = true;
  for (const auto& r : results) {
    allPass = allPass && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name
              << "  [" << r.detail << "]  (" << r.seconds << " s)\n";
  }
  std::cout << (allPass ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << "\n";
  return allPass ? 0 : 1;
}
