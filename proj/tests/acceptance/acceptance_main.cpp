// Acceptance run: one PASS/FAIL line per criterion, details indented below.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "growthfpt/validation.hpp"

int main(int argc, char** argv) {
  growthfpt::validation::Options opt;
  if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (int id = 1; id <= 10; ++id) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = growthfpt::validation::run_criterion(id, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  (%.1f s)\n", growthfpt::validation::summary_line(r).c_str(), secs);
    for (const auto& n : r.notes) std::printf("      %s\n", n.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
