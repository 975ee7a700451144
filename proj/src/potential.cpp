#include "bregman/potential.hpp"

namespace bregman {

QuadraticPotential::QuadraticPotential(SymMatrix a)
    : a_(a), chol_(cholesky(a)) {}

QuadraticPotential QuadraticPotential::identity(std::size_t dim) {
  return QuadraticPotential(SymMatrix::identity(dim));
}

double QuadraticPotential::value(const Vec& x) const { return a_.quad(x); }

Vec QuadraticPotential::grad(const Vec& x) const {
  return scaled(a_.apply(x), 2.0);
}

Vec QuadraticPotential::inv_grad(const Vec& z) const {
  return scaled(chol_.solve(z), 0.5);
}

double QuadraticPotential::bregman(const Vec& x, const Vec& y) const {
  const Vec d = sub(x, y);
  return a_.quad(d);
}

double QuadraticPotential::bregman_conjugate(const Vec& zx, const Vec& zy) const {
  const Vec d = sub(zx, zy);
  return 0.25 * dot(d, chol_.solve(d));
}

double QuadraticPotential::conjugate_value(const Vec& z) const {
  return 0.25 * dot(z, chol_.solve(z));
}

Vec QuadraticPotential::solve(const Vec& v) const { return chol_.solve(v); }

namespace {

// Extreme generalized eigenvalues of (A, B): eigenvalues of R^{-1} A R^{-T}
// where B = R R^T.
std::pair<double, double> generalized_extreme_eigs(const SymMatrix& a,
                                                   const SymMatrix& b) {
  const std::size_t d = a.dim();
  const CholeskyFactor r = cholesky(b);
  // Y = R^{-1} A, column by column of A
  std::vector<Vec> ycols(d);
  for (std::size_t j = 0; j < d; ++j) {
    Vec col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = a.at(i, j);
    ycols[j] = r.solve_lower(col);
  }
  // M = Y R^{-T}; row i of M solves R m_i = row i of Y
  std::vector<Vec> mrows(d);
  for (std::size_t i = 0; i < d; ++i) {
    Vec yrow(d);
    for (std::size_t j = 0; j < d; ++j) yrow[j] = ycols[j][i];
    mrows[i] = r.solve_lower(yrow);
  }
  return extreme_eigs(SymMatrix::from_rows(mrows));
}

} // namespace

ConvexityProfile convexity_profile(const QuadraticPotential& p, const NormSpec& n) {
  const SymMatrix& a = p.matrix();
  switch (n.kind()) {
    case NormKind::Mahalanobis: {
      if (n.matrix().dim() != a.dim())
        throw std::invalid_argument("convexity_profile: dimension mismatch");
      const auto [lo, hi] = generalized_extreme_eigs(a, n.matrix());
      return {2.0 * lo, 2.0 * hi};
    }
    case NormKind::L2: {
      const auto [lo, hi] = extreme_eigs(a);
      return {2.0 * lo, 2.0 * hi};
    }
    case NormKind::L1: {
      // ||v||_2 <= ||v||_1 <= sqrt(d) ||v||_2 gives conservative constants
      const auto [lo, hi] = extreme_eigs(a);
      return {2.0 * lo / static_cast<double>(a.dim()), 2.0 * hi};
    }
    case NormKind::LInf:
      throw std::invalid_argument(
          "convexity_profile: unsupported pair (quadratic potential, linf norm)");
  }
  throw std::logic_error("convexity_profile: unreachable");
}

double mu_against_l2(const QuadraticPotential& p) {
  return 2.0 * extreme_eigs(p.matrix()).first;
}

} // namespace bregman
