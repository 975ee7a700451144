#include <doctest.h>

#include <cmath>

#include "bregman/linalg.hpp"
#include "bregman/rng.hpp"

using namespace bregman;

namespace {

SymMatrix two_one() {
  SymMatrix a(2);
  a.set(0, 0, 2.0);
  a.set(0, 1, 1.0);
  a.set(1, 1, 2.0);
  return a;
}

SymMatrix random_spd(CounterRng& rng, std::size_t d) {
  // M M^T + 0.1 I is positive definite for any M
  std::vector<Vec> m(d, Vec(d));
  for (auto& row : m)
    for (double& v : row) v = 2.0 * rng.next_unit() - 1.0;
  SymMatrix a(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      double s = i == j ? 0.1 : 0.0;
      for (std::size_t k = 0; k < d; ++k) s += m[i][k] * m[j][k];
      a.set(i, j, s);
    }
  return a;
}

Vec random_vec(CounterRng& rng, std::size_t d, double scale = 2.0) {
  Vec v(d);
  for (double& x : v) x = scale * (2.0 * rng.next_unit() - 1.0);
  return v;
}

} // namespace

TEST_CASE("vector helpers") {
  const Vec a{1.0, 2.0, 3.0};
  const Vec b{4.0, -5.0, 6.0};
  CHECK(dot(a, b) == doctest::Approx(12.0));
  CHECK(norm2(b) == doctest::Approx(std::sqrt(77.0)));
  CHECK(add(a, b) == Vec{5.0, -3.0, 9.0});
  CHECK(sub(a, b) == Vec{-3.0, 7.0, -3.0});
  CHECK(scaled(a, -2.0) == Vec{-2.0, -4.0, -6.0});
  Vec c = a;
  axpy(c, 2.0, b);
  CHECK(c == Vec{9.0, -8.0, 15.0});
  CHECK(all_finite(a));
  CHECK_FALSE(all_finite(Vec{1.0, std::nan("")}));
  CHECK_THROWS_AS(require_finite(Vec{1.0 / 0.0}, "here"), numerical_error);
  CHECK_THROWS_AS(dot(a, Vec{1.0}), std::invalid_argument);
}

TEST_CASE("SymMatrix storage is exactly symmetric") {
  SymMatrix a = SymMatrix::from_rows({{1.0, 2.0}, {0.0, 5.0}});
  CHECK(a.at(0, 1) == 1.0); // (2 + 0) / 2
  CHECK(a.at(1, 0) == a.at(0, 1));
  CHECK(a.at(1, 1) == 5.0);

  const SymMatrix d = SymMatrix::diag({2.0, 3.0});
  CHECK(d.apply({1.0, 1.0}) == Vec{2.0, 3.0});
  CHECK(d.quad({1.0, 2.0}) == doctest::Approx(14.0));
  CHECK(d.scaled_by(0.5).at(1, 1) == doctest::Approx(1.5));
  CHECK(SymMatrix::identity(3).frobenius() == doctest::Approx(std::sqrt(3.0)));
  CHECK_THROWS_AS(SymMatrix::from_rows({{1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SymMatrix(0), std::invalid_argument);
}

TEST_CASE("cholesky of [[2,1],[1,2]]") {
  const CholeskyFactor f = cholesky(two_one());
  CHECK(f.at(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(f.at(0, 1) == 0.0);
  CHECK(f.at(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(f.at(1, 1) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));

  // L y = b, then L^T x = y, matches A x = b
  const Vec x = f.solve({1.0, 0.0});
  CHECK(x[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("cholesky rejects indefinite matrices naming the pivot") {
  SymMatrix a(2);
  a.set(0, 0, 1.0);
  a.set(0, 1, 2.0);
  a.set(1, 1, 1.0); // eigenvalues 3 and -1
  CHECK_THROWS_WITH_AS(cholesky(a),
                       doctest::Contains("pivot 1"), numerical_error);
}

TEST_CASE("solve_spd and spd_inverse on random matrices") {
  CounterRng rng(7);
  for (int it = 0; it < 50; ++it) {
    const std::size_t d = 1 + it % 6;
    const SymMatrix a = random_spd(rng, d);
    const Vec b = random_vec(rng, d);
    const Vec x = solve_spd(a, b);
    const Vec back = a.apply(x);
    for (std::size_t i = 0; i < d; ++i)
      CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-9));

    const SymMatrix inv = spd_inverse(a);
    for (std::size_t i = 0; i < d; ++i) {
      Vec e(d, 0.0);
      e[i] = 1.0;
      const Vec col = a.apply(inv.apply(e));
      for (std::size_t j = 0; j < d; ++j)
        CHECK(col[j] == doctest::Approx(e[j]).scale(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("extreme eigenvalues") {
  const auto [lo, hi] = extreme_eigs(two_one());
  CHECK(lo == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(hi == doctest::Approx(3.0).epsilon(1e-10));

  const auto [dlo, dhi] = extreme_eigs(SymMatrix::diag({4.0, 1.0, 9.0}));
  CHECK(dlo == doctest::Approx(1.0));
  CHECK(dhi == doctest::Approx(9.0));

  CHECK_THROWS_AS(extreme_eigs(SymMatrix(65)), std::invalid_argument);
}

TEST_CASE("eigenvalue range bounds the Rayleigh quotient") {
  CounterRng rng(11);
  for (int it = 0; it < 50; ++it) {
    const std::size_t d = 2 + it % 5;
    const SymMatrix a = random_spd(rng, d);
    const auto [lo, hi] = extreme_eigs(a);
    CHECK(lo > 0.0);
    for (int k = 0; k < 5; ++k) {
      const Vec x = random_vec(rng, d);
      const double nn = dot(x, x);
      if (nn == 0.0) continue;
      const double r = a.quad(x) / nn;
      CHECK(r >= lo - 1e-9 * hi);
      CHECK(r <= hi + 1e-9 * hi);
    }
  }
}

TEST_CASE("norm values on (3,-4)") {
  const Vec v{3.0, -4.0};
  CHECK(norm(NormSpec::l1(), v) == doctest::Approx(7.0));
  CHECK(norm(NormSpec::l2(), v) == doctest::Approx(5.0));
  CHECK(norm(NormSpec::linf(), v) == doctest::Approx(4.0));
  CHECK(dual_norm(NormSpec::l1(), v) == doctest::Approx(4.0));
  CHECK(dual_norm(NormSpec::linf(), v) == doctest::Approx(7.0));
  CHECK(dual_norm(NormSpec::l2(), v) == doctest::Approx(5.0));

  const NormSpec m = NormSpec::mahalanobis(two_one());
  CHECK(norm(m, v) == doctest::Approx(std::sqrt(26.0)));
  CHECK(dual_norm(m, v) == doctest::Approx(std::sqrt(74.0 / 3.0)));
  CHECK(m.name() == "mahalanobis");
  CHECK(NormSpec::l1().name() == "l1");
}

TEST_CASE("dual of the dual returns the original norm") {
  CHECK(NormSpec::l1().dual().kind() == NormKind::LInf);
  CHECK(NormSpec::l1().dual().dual().kind() == NormKind::L1);
  CHECK(NormSpec::l2().dual().kind() == NormKind::L2);

  const NormSpec m = NormSpec::mahalanobis(two_one());
  const NormSpec mdd = m.dual().dual();
  REQUIRE(mdd.kind() == NormKind::Mahalanobis);
  CHECK(frobenius_distance(m.matrix(), mdd.matrix()) < 1e-12);
}

TEST_CASE("pairing is bounded by norm times dual norm") {
  CounterRng rng(3);
  const NormSpec norms[] = {NormSpec::l1(), NormSpec::l2(), NormSpec::linf(),
                            NormSpec::mahalanobis(two_one())};
  for (int it = 0; it < 1000; ++it) {
    const Vec x = random_vec(rng, 2);
    const Vec z = random_vec(rng, 2);
    for (const NormSpec& n : norms)
      CHECK(std::abs(dot(x, z)) <= norm(n, x) * dual_norm(n, z) + 1e-12);
  }
}

TEST_CASE("mahalanobis requires a positive definite matrix") {
  SymMatrix bad(2);
  bad.set(0, 0, 1.0);
  bad.set(0, 1, 2.0);
  bad.set(1, 1, 1.0);
  CHECK_THROWS_AS(NormSpec::mahalanobis(bad), numerical_error);
  CHECK_THROWS_AS(NormSpec::l2().matrix(), std::invalid_argument);
}
