#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "deepleaf/tree.hpp"

namespace deepleaf {

struct SampleReport {
  long n = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  // m -> number of sampled trees with 2m leaves at the deepest level
  std::map<unsigned, long long> histogram;

  double frequency(unsigned m) const;
  double standard_error(unsigned m) const;  // sqrt(p(1-p)/samples)
  double mean_width() const;                // average of 2m
};

// Uniform random tree of size n in O(n) (Remy growth). Deterministic given
// the engine state; uses rejection sampling for the bounded draws so results
// do not depend on the platform's distribution implementation.
TreeShape sample_tree(long n, std::mt19937_64& rng);

// Parallel sampling with per-worker RNG streams derived from (seed, worker).
// The sample partition over workers is fixed, so output is reproducible for
// a given (n, samples, seed, threads).
SampleReport empirical_distribution(long n, long samples, std::uint64_t seed,
                                    unsigned threads = 1);

}  // namespace deepleaf
