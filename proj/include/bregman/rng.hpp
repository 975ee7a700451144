#pragma once

#include <cstdint>

#include "bregman/linalg.hpp"

namespace bregman {

// Counter-based generator: draw k is splitmix64 applied to (seed, k), so a
// stream is fully determined by its seed and reproduces bit-identically.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  // uniform on [0, 1)
  double next_unit();
  // standard normal via Box-Muller; pairs are generated together and the
  // second half is served on the following call
  double next_gaussian();
  // +1/-1 from the low bit of the next draw (heads -> +1)
  int next_sign();
  // uniform on the sphere of the given radius: d gaussians, normalized
  Vec next_on_sphere(std::size_t d, double radius);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace bregman
