#pragma once

#include <cstdint>

#include "divsum/linalg.hpp"

namespace divsum {

// splitmix64: a fixed, platform-independent integer stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  // [0, 1) with 53 random bits
  double uniform();
  // (0, 1)
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Box-Muller
  double normal();
  Complex complex_normal();
  // Derived stream for an independent sub-experiment.
  Rng fork(std::uint64_t tag);

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

CMatrix random_gaussian(std::size_t d, Rng& rng, bool real = false);
// Haar unitary (orthogonal when real) from a QR factorization with phase correction.
CMatrix random_unitary(std::size_t d, Rng& rng, bool real = false);

}  // namespace divsum
