#pragma once

#include <cstdint>

#include "lambda_forge/scalar.hpp"

namespace lf {

// splitmix64; deterministic across platforms, used for seeded sweeps and tests
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [lo, hi], inclusive
  long range(long lo, long hi) {
    if (hi < lo) throw InputError("Rng::range: empty interval");
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  Rat rat(long num_bound, long den_bound) {
    Rat r(Int(range(-num_bound, num_bound)), Int(range(1, den_bound)));
    r.canonicalize();
    return r;
  }
};

}  // namespace lf
