#include <doctest.h>

#include <cmath>

#include "bregman/loss.hpp"
#include "bregman/rng.hpp"

using namespace bregman;

namespace {

Vec random_vec(CounterRng& rng, std::size_t d, double scale) {
  Vec v(d);
  for (double& x : v) x = scale * (2.0 * rng.next_unit() - 1.0);
  return v;
}

Dataset random_points(CounterRng& rng, std::size_t n, std::size_t d) {
  std::vector<LabeledPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back({random_vec(rng, d, 2.0), rng.next_sign()});
  return Dataset(std::move(pts));
}

} // namespace

TEST_CASE("loss closed forms") {
  const Dataset ds = fixture_four_point();
  CHECK(loss(ds, Vec{0.0, 0.0}) == 1.0);

  // margins under (0,1): 1, 1, 1, 1 -> mean of exp(-1)
  CHECK(loss(ds, Vec{0.0, 1.0}) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  // margins under (1,0): -0.5, 0.5, 0.75, 2
  const double by_hand = (std::exp(0.5) + std::exp(-0.5) + std::exp(-0.75) +
                          std::exp(-2.0)) / 4.0;
  CHECK(loss(ds, Vec{1.0, 0.0}) == doctest::Approx(by_hand).epsilon(1e-15));
}

TEST_CASE("loss stays finite under huge parameters") {
  const Dataset ds = fixture_four_point();
  const double big = loss(ds, Vec{-1e6, 0.0});
  CHECK(std::isfinite(big));
  CHECK(big > 0.0);
  const double tiny = loss(ds, Vec{0.0, 1e6});
  CHECK(std::isfinite(tiny));
  CHECK(tiny > 0.0);
}

TEST_CASE("gradient matches finite differences") {
  CounterRng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(rng.next_u64() % 5);
    const Dataset ds = random_points(rng, 2 + rng.next_u64() % 6, d);
    const Vec theta = random_vec(rng, d, 1.0);
    const LossEval ev = loss_grad(ds, theta);
    CHECK(ev.value == doctest::Approx(loss(ds, theta)).epsilon(1e-15));

    const double h = 1e-6;
    for (std::size_t j = 0; j < d; ++j) {
      Vec up = theta, dn = theta;
      up[j] += h;
      dn[j] -= h;
      const double fd = (loss(ds, up) - loss(ds, dn)) / (2.0 * h);
      CHECK(ev.gradient[j] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("gradient clamps with the value") {
  const Dataset ds({{{1.0}, 1}});
  const LossEval ev = loss_grad(ds, Vec{-800.0});
  CHECK(std::isfinite(ev.value));
  CHECK(std::isfinite(ev.gradient[0]));
  CHECK(ev.value == doctest::Approx(std::exp(kMarginClamp)));
}

TEST_CASE("normalized margin") {
  const Dataset ds = fixture_four_point();
  CHECK(normalized_margin(ds, {0.0, 1.0}, NormSpec::l2()) == doctest::Approx(1.0));
  CHECK(normalized_margin(ds, {0.0, 2.0}, NormSpec::l2()) == doctest::Approx(1.0));
  CHECK(normalized_margin(ds, {0.0, 1.0}, NormSpec::l1()) == doctest::Approx(1.0));
  // sup-norm of (1,1) is 1; worst margin is at (-0.5, 1) or (-0.75, -1)
  CHECK(normalized_margin(ds, {1.0, 1.0}, NormSpec::linf()) ==
        doctest::Approx(0.5));
  // negative when the direction misclassifies
  CHECK(normalized_margin(ds, {1.0, 0.0}, NormSpec::l2()) ==
        doctest::Approx(-0.5));
  CHECK_THROWS_AS(normalized_margin(ds, {0.0, 0.0}, NormSpec::l2()),
                  std::invalid_argument);
}

TEST_CASE("margin is scale invariant for random directions") {
  CounterRng rng(31);
  const Dataset ds = fixture_four_point();
  for (int trial = 0; trial < 200; ++trial) {
    const Vec u = random_vec(rng, 2, 3.0);
    if (norm2(u) < 1e-6) continue;
    const double base = normalized_margin(ds, u, NormSpec::l1());
    const double stretched = normalized_margin(ds, scaled(u, 7.5), NormSpec::l1());
    CHECK(stretched == doctest::Approx(base).epsilon(1e-12));
  }
}
