#include <cstdio>
#include <cstdlib>

#include "lambda_forge/suite.hpp"

// Runs the thirteen acceptance criteria and prints one line per criterion.
// Optional argv[1] reseeds the randomized sweeps.
int main(int argc, char** argv) {
  uint64_t seed = 0;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

  std::printf("acceptance suite, seed %llu, %u worker(s)\n",
              static_cast<unsigned long long>(seed), lf::worker_threads());
  lf::SuiteResult res = lf::run_acceptance_suite(seed);
  int failed = 0;
  for (const auto& c : res.criteria) {
    if (!c.pass) ++failed;
    std::printf("%s  %2d %-20s %8.3f s (budget %5.1f s)  %s\n", c.pass ? "pass" : "FAIL",
                c.index, c.name.c_str(), c.seconds, c.budgetSeconds, c.detail.c_str());
  }
  if (failed == 0)
    std::printf("all %d criteria pass\n", lf::criterion_count());
  else
    std::printf("%d of %d criteria FAILED\n", failed, lf::criterion_count());
  return failed == 0 ? 0 : 1;
}
