#include "bregman/rng.hpp"

#include <cmath>
#include <numbers>

namespace bregman {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

std::uint64_t CounterRng::next_u64() {
  // mix the seed once so nearby seeds give unrelated streams
  return splitmix64(splitmix64(seed_) + counter_++);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the log finite
  const double u1 = 1.0 - next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  have_spare_ = true;
  return r * std::cos(phi);
}

int CounterRng::next_sign() { return (next_u64() & 1ULL) ? 1 : -1; }

Vec CounterRng::next_on_sphere(std::size_t d, double radius) {
  Vec v(d);
  double n2;
  do {
    for (std::size_t i = 0; i < d; ++i) v[i] = next_gaussian();
    n2 = norm2(v);
  } while (n2 == 0.0);
  return scaled(v, radius / n2);
}

} // namespace bregman
