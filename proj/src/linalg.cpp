#include "bregman/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace bregman {

namespace {

void require_same_dim(const Vec& a, const Vec& b, const char* where) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
}

constexpr std::size_t kMaxDim = 64;

} // namespace

double dot(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

Vec add(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "add");
  Vec r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "sub");
  Vec r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scaled(const Vec& v, double s) {
  Vec r(v);
  for (double& x : r) x *= s;
  return r;
}

void axpy(Vec& a, double s, const Vec& b) {
  require_same_dim(a, b, "axpy");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

bool all_finite(const Vec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

void require_finite(const Vec& v, const char* where) {
  if (!all_finite(v))
    throw numerical_error(std::string(where) + ": non-finite entry");
}

SymMatrix::SymMatrix(std::size_t dim)
    : dim_(dim), upper_(dim * (dim + 1) / 2, 0.0) {
  if (dim == 0) throw std::invalid_argument("SymMatrix: dim must be positive");
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diag(const Vec& entries) {
  SymMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<Vec>& rows) {
  const std::size_t d = rows.size();
  SymMatrix m(d);
  for (const Vec& row : rows)
    if (row.size() != d)
      throw std::invalid_argument("SymMatrix::from_rows: matrix not square");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      m.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
  return m;
}

std::size_t SymMatrix::idx(std::size_t i, std::size_t j) const {
  // caller guarantees i <= j < dim_
  return i * dim_ - i * (i + 1) / 2 + j;
}

double SymMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_)
    throw std::invalid_argument("SymMatrix::at: index out of range");
  return i <= j ? upper_[idx(i, j)] : upper_[idx(j, i)];
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
  if (i >= dim_ || j >= dim_)
    throw std::invalid_argument("SymMatrix::set: index out of range");
  upper_[i <= j ? idx(i, j) : idx(j, i)] = v;
}

Vec SymMatrix::apply(const Vec& x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("SymMatrix::apply: dimension mismatch");
  Vec r(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r[i] += at(i, j) * x[j];
  return r;
}

double SymMatrix::quad(const Vec& x) const { return dot(x, apply(x)); }

SymMatrix SymMatrix::scaled_by(double s) const {
  SymMatrix m(*this);
  for (double& v : m.upper_) v *= s;
  return m;
}

std::vector<Vec> SymMatrix::dense_rows() const {
  std::vector<Vec> rows(dim_, Vec(dim_, 0.0));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) rows[i][j] = at(i, j);
  return rows;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) s += at(i, j) * at(i, j);
  return std::sqrt(s);
}

double frobenius_distance(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("frobenius_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const double d = a.at(i, j) - b.at(i, j);
      s += d * d;
    }
  return std::sqrt(s);
}

CholeskyFactor::CholeskyFactor(std::size_t dim, std::vector<double> lower)
    : dim_(dim), lower_(std::move(lower)) {}

double CholeskyFactor::at(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_)
    throw std::invalid_argument("CholeskyFactor::at: index out of range");
  return j <= i ? lower_[i * dim_ + j] : 0.0;
}

Vec CholeskyFactor::solve_lower(const Vec& b) const {
  if (b.size() != dim_)
    throw std::invalid_argument("CholeskyFactor::solve_lower: dimension mismatch");
  Vec y(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= lower_[i * dim_ + j] * y[j];
    y[i] = s / lower_[i * dim_ + i];
  }
  return y;
}

Vec CholeskyFactor::solve_lower_transposed(const Vec& b) const {
  if (b.size() != dim_)
    throw std::invalid_argument(
        "CholeskyFactor::solve_lower_transposed: dimension mismatch");
  Vec y(dim_, 0.0);
  for (std::size_t ii = dim_; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < dim_; ++j) s -= lower_[j * dim_ + ii] * y[j];
    y[ii] = s / lower_[ii * dim_ + ii];
  }
  return y;
}

Vec CholeskyFactor::solve(const Vec& b) const {
  return solve_lower_transposed(solve_lower(b));
}

CholeskyFactor cholesky(const SymMatrix& a) {
  const std::size_t d = a.dim();
  std::vector<double> lo(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lo[i * d + k] * lo[j * d + k];
      if (i == j) {
        if (s <= 0.0 || !std::isfinite(s))
          throw numerical_error("cholesky: matrix not positive definite, pivot " +
                                std::to_string(i) + " = " + std::to_string(s));
        lo[i * d + i] = std::sqrt(s);
      } else {
        lo[i * d + j] = s / lo[j * d + j];
      }
    }
  }
  return CholeskyFactor(d, std::move(lo));
}

Vec solve_spd(const SymMatrix& a, const Vec& b) { return cholesky(a).solve(b); }

SymMatrix spd_inverse(const SymMatrix& a) {
  const std::size_t d = a.dim();
  const CholeskyFactor f = cholesky(a);
  std::vector<Vec> cols(d);
  for (std::size_t j = 0; j < d; ++j) {
    Vec e(d, 0.0);
    e[j] = 1.0;
    cols[j] = f.solve(e);
  }
  // columns of A^{-1}; from_rows symmetrizes the solver round-off
  std::vector<Vec> rows(d, Vec(d, 0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) rows[i][j] = cols[j][i];
  return SymMatrix::from_rows(rows);
}

std::pair<double, double> extreme_eigs(const SymMatrix& a) {
  const std::size_t d = a.dim();
  if (d > kMaxDim)
    throw std::invalid_argument("extreme_eigs: dim " + std::to_string(d) +
                                " exceeds supported maximum 64");
  std::vector<Vec> m = a.dense_rows();
  const double total = a.frobenius();
  if (d == 1) return {m[0][0], m[0][0]};

  auto off_diag = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) s += m[i][j] * m[i][j];
    return std::sqrt(s);
  };

  const double tol = 1e-12 * std::max(total, 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diag() <= tol) {
      double lo = m[0][0], hi = m[0][0];
      for (std::size_t i = 1; i < d; ++i) {
        lo = std::min(lo, m[i][i]);
        hi = std::max(hi, m[i][i]);
      }
      return {lo, hi};
    }
    for (std::size_t p = 0; p < d - 1; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        if (m[p][q] == 0.0) continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
    }
  }
  throw numerical_error("extreme_eigs: Jacobi did not converge in 100 sweeps");
}

NormSpec NormSpec::mahalanobis(SymMatrix a) {
  cholesky(a); // reject non-SPD up front
  NormSpec n(NormKind::Mahalanobis);
  n.matrix_.push_back(std::move(a));
  return n;
}

const SymMatrix& NormSpec::matrix() const {
  if (kind_ != NormKind::Mahalanobis)
    throw std::invalid_argument("NormSpec::matrix: norm has no matrix");
  return matrix_.front();
}

std::string NormSpec::name() const {
  switch (kind_) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::LInf: return "linf";
    case NormKind::Mahalanobis: return "mahalanobis";
  }
  return "?";
}

double NormSpec::value(const Vec& v) const {
  switch (kind_) {
    case NormKind::L1: {
      double s = 0.0;
      for (double x : v) s += std::abs(x);
      return s;
    }
    case NormKind::L2:
      return norm2(v);
    case NormKind::LInf: {
      double s = 0.0;
      for (double x : v) s = std::max(s, std::abs(x));
      return s;
    }
    case NormKind::Mahalanobis: {
      const double q = matrix_.front().quad(v);
      // round-off can push tiny quadratic forms slightly negative
      return std::sqrt(std::max(q, 0.0));
    }
  }
  return 0.0;
}

double NormSpec::dual_value(const Vec& v) const { return dual().value(v); }

NormSpec NormSpec::dual() const {
  switch (kind_) {
    case NormKind::L1: return linf();
    case NormKind::L2: return l2();
    case NormKind::LInf: return l1();
    case NormKind::Mahalanobis: return mahalanobis(spd_inverse(matrix_.front()));
  }
  throw std::logic_error("NormSpec::dual: unreachable");
}

double norm(const NormSpec& n, const Vec& v) { return n.value(v); }
double dual_norm(const NormSpec& n, const Vec& v) { return n.dual_value(v); }

} // namespace bregman
