#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lf {

// One acceptance criterion: a batch of exact checks plus a wall-clock
// budget.  pass means every check held and the run stayed under budget.
struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  bool checksPass = false;
  long checkCount = 0;
  double seconds = 0.0;
  double budgetSeconds = 0.0;
  std::string detail;  // summary on success, first witness on failure
};

struct SuiteResult {
  uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool all_pass() const;
};

int criterion_count();
std::string criterion_name(int index);

// criteria are numbered 1..criterion_count(); the seed drives every
// randomized sweep, so a fixed seed reproduces the run exactly
CriterionResult run_criterion(int index, uint64_t seed);
SuiteResult run_acceptance_suite(uint64_t seed);

// size of the pool used for the per-case sweeps; LAMBDA_FORGE_THREADS
// lowers it, never raises it
unsigned worker_threads();

// runs fn(0..n-1) on the worker pool; callers keep determinism by writing
// each case into its own slot.  The first exception is rethrown after the
// pool drains.
void parallel_for(unsigned n, const std::function<void(unsigned)>& fn);

}  // namespace lf
