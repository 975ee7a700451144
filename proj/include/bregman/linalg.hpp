#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bregman {

using Vec = std::vector<double>;

// Raised when an algorithm fails for numerical reasons (bad pivot,
// non-convergence, non-finite values). CLI maps this to exit code 4.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& v, double s);
// a += s * b
void axpy(Vec& a, double s, const Vec& b);
bool all_finite(const Vec& v);
// Throws numerical_error naming `where` if any entry is NaN/Inf.
void require_finite(const Vec& v, const char* where);

// Dense symmetric matrix, d <= 64. Stores the upper triangle packed
// row-major, so A(i,j) == A(j,i) holds exactly by construction.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dim);
  static SymMatrix identity(std::size_t dim);
  static SymMatrix diag(const Vec& entries);
  // Accepts any square matrix; stores (M + M^T)/2.
  static SymMatrix from_rows(const std::vector<Vec>& rows);

  std::size_t dim() const { return dim_; }
  double at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double v);

  Vec apply(const Vec& x) const;   // A x
  double quad(const Vec& x) const; // x^T A x
  SymMatrix scaled_by(double s) const;
  std::vector<Vec> dense_rows() const;
  double frobenius() const;

 private:
  std::size_t idx(std::size_t i, std::size_t j) const;
  std::size_t dim_;
  std::vector<double> upper_;
};

double frobenius_distance(const SymMatrix& a, const SymMatrix& b);

// Lower-triangular factor L with A = L L^T.
class CholeskyFactor {
 public:
  CholeskyFactor(std::size_t dim, std::vector<double> lower);
  std::size_t dim() const { return dim_; }
  double at(std::size_t i, std::size_t j) const; // 0 above the diagonal

  Vec solve_lower(const Vec& b) const;            // L y = b
  Vec solve_lower_transposed(const Vec& b) const; // L^T y = b
  Vec solve(const Vec& b) const;                  // A x = b

 private:
  std::size_t dim_;
  std::vector<double> lower_; // dense row-major, upper part zero
};

// Fails with numerical_error naming the first non-positive pivot index
// (0-based) when the matrix is not positive definite.
CholeskyFactor cholesky(const SymMatrix& a);
Vec solve_spd(const SymMatrix& a, const Vec& b);
SymMatrix spd_inverse(const SymMatrix& a);

// (lambda_min, lambda_max) by cyclic Jacobi sweeps. Converged when the
// off-diagonal Frobenius norm falls below 1e-12 * ||A||_F; gives up with
// numerical_error after 100 sweeps. Supports dim <= 64 only.
std::pair<double, double> extreme_eigs(const SymMatrix& a);

enum class NormKind { L1, L2, LInf, Mahalanobis };

// A norm on R^d. Mahalanobis carries the SPD matrix A of
// ||v||_A = sqrt(v^T A v); the other kinds carry no state.
class NormSpec {
 public:
  static NormSpec l1() { return NormSpec(NormKind::L1); }
  static NormSpec l2() { return NormSpec(NormKind::L2); }
  static NormSpec linf() { return NormSpec(NormKind::LInf); }
  static NormSpec mahalanobis(SymMatrix a);

  NormKind kind() const { return kind_; }
  const SymMatrix& matrix() const; // Mahalanobis only
  std::string name() const;

  double value(const Vec& v) const;
  double dual_value(const Vec& v) const;
  // L1 <-> LInf, L2 self-dual, Mahalanobis(A) -> Mahalanobis(A^{-1}).
  NormSpec dual() const;

 private:
  explicit NormSpec(NormKind kind) : kind_(kind) {}
  NormKind kind_;
  std::vector<SymMatrix> matrix_; // empty or one entry
};

double norm(const NormSpec& n, const Vec& v);
double dual_norm(const NormSpec& n, const Vec& v);

} // namespace bregman
