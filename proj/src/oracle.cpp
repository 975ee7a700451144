#include "bregman/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bregman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double min_signed_margin(const std::vector<Vec>& z, const Vec& u) {
  double worst = kInf;
  for (const Vec& zi : z) worst = std::min(worst, dot(u, zi));
  return worst;
}

MarginCertificate certify(const std::vector<Vec>& z, Vec u) {
  const double gamma = min_signed_margin(z, u);
  return {std::move(u), gamma, gamma > 0.0};
}

// ---- hard-margin dual coordinate ascent (l2 geometry) ----
//
// Solves min (1/2)||v||^2 s.t. <v, z_i> >= 1 through its dual; the
// separator is u = v/||v||. Cycles coordinates until the KKT residual
// drops below 1e-9 or 1e4 sweeps pass. Unbounded dual growth means the
// constraints are infeasible, i.e. the data are not separable.
MarginCertificate margin_by_coordinate_ascent(const std::vector<Vec>& z) {
  const std::size_t n = z.size();
  const std::size_t d = z.front().size();
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = dot(z[i], z[i]);

  std::vector<double> alpha(n, 0.0);
  Vec v(d, 0.0);
  constexpr double kKktTol = 1e-9;
  constexpr int kMaxSweeps = 10000;
  constexpr double kAlphaCap = 1e12;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      if (sq[i] == 0.0) continue;
      const double next = std::max(0.0, alpha[i] + (1.0 - dot(v, z[i])) / sq[i]);
      if (next != alpha[i]) {
        axpy(v, next - alpha[i], z[i]);
        alpha[i] = next;
      }
    }
    double residual = 0.0, alpha_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = dot(v, z[i]);
      residual = std::max(residual, std::max(1.0 - m, alpha[i] * std::abs(m - 1.0)));
      alpha_total += alpha[i];
    }
    if (residual <= kKktTol) break;
    if (alpha_total > kAlphaCap) break; // diverging dual: not separable
  }

  const double vn = norm2(v);
  if (vn == 0.0) return {Vec(d, 0.0), 0.0, false};
  return certify(z, scaled(v, 1.0 / vn));
}

// ---- dense bounded-variable simplex ----
//
// maximize c.x  s.t.  T x = rhs,  0 <= x_j <= upper_j  (upper may be inf).
// Nonbasic variables rest at one of their bounds; Bland's rule (lowest
// eligible index in, lowest leaving variable index on ratio ties) protects
// against cycling on the degenerate bases these margin programs produce.
class BoundedSimplex {
 public:
  BoundedSimplex(std::vector<Vec> tableau, Vec rhs, Vec objective, Vec upper)
      : tab_(std::move(tableau)),
        xb_(std::move(rhs)),
        c_(std::move(objective)),
        upper_(std::move(upper)),
        rows_(tab_.size()),
        cols_(c_.size()) {
    // caller supplies an identity basis in the trailing columns
    basis_.resize(rows_);
    status_.assign(cols_, Status::AtLower);
    for (std::size_t r = 0; r < rows_; ++r) {
      basis_[r] = cols_ - rows_ + r;
      status_[basis_[r]] = Status::Basic;
    }
  }

  void solve() {
    constexpr long kMaxPivots = 1000000;
    for (long pivots = 0; pivots < kMaxPivots; ++pivots)
      if (!iterate()) return;
    throw numerical_error("simplex: pivot limit exceeded");
  }

  Vec solution() const {
    Vec x(cols_, 0.0);
    for (std::size_t j = 0; j < cols_; ++j)
      if (status_[j] == Status::AtUpper) x[j] = upper_[j];
    for (std::size_t r = 0; r < rows_; ++r) x[basis_[r]] = xb_[r];
    return x;
  }

 private:
  enum class Status { Basic, AtLower, AtUpper };
  static constexpr double kEps = 1e-11;

  double reduced_cost(std::size_t j) const {
    double d = c_[j];
    for (std::size_t r = 0; r < rows_; ++r)
      if (c_[basis_[r]] != 0.0) d -= c_[basis_[r]] * tab_[r][j];
    return d;
  }

  bool iterate() {
    // entering variable, Bland: lowest index that can improve
    std::size_t enter = cols_;
    bool from_lower = true;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (status_[j] == Status::Basic) continue;
      const double d = reduced_cost(j);
      if (status_[j] == Status::AtLower && d > kEps) {
        enter = j;
        from_lower = true;
        break;
      }
      if (status_[j] == Status::AtUpper && d < -kEps) {
        enter = j;
        from_lower = false;
        break;
      }
    }
    if (enter == cols_) return false; // optimal

    // moving the entering variable by t >= 0 changes basics by -dir * t
    const double sign = from_lower ? 1.0 : -1.0;
    double t_max = upper_[enter]; // bound-to-bound flip distance
    std::size_t leave_row = rows_;
    bool leave_at_upper = false;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double w = sign * tab_[r][enter];
      double bound = kInf;
      bool hits_upper = false;
      if (w > kEps) {
        bound = xb_[r] / w; // basic drops to its lower bound 0
      } else if (w < -kEps && upper_[basis_[r]] < kInf) {
        bound = (upper_[basis_[r]] - xb_[r]) / (-w);
        hits_upper = true;
      }
      if (bound < t_max - kEps ||
          (bound < t_max + kEps && leave_row != rows_ &&
           basis_[r] < basis_[leave_row])) {
        t_max = std::max(bound, 0.0);
        leave_row = r;
        leave_at_upper = hits_upper;
      } else if (bound < t_max + kEps && leave_row == rows_) {
        t_max = std::max(bound, 0.0);
        leave_row = r;
        leave_at_upper = hits_upper;
      }
    }
    if (t_max == kInf) throw numerical_error("simplex: unbounded program");

    for (std::size_t r = 0; r < rows_; ++r)
      xb_[r] -= t_max * sign * tab_[r][enter];

    if (leave_row == rows_) {
      // entering variable runs bound to bound, basis unchanged
      status_[enter] = from_lower ? Status::AtUpper : Status::AtLower;
      return true;
    }

    const std::size_t leave = basis_[leave_row];
    status_[leave] = leave_at_upper ? Status::AtUpper : Status::AtLower;
    status_[enter] = Status::Basic;
    basis_[leave_row] = enter;
    xb_[leave_row] = from_lower ? t_max : upper_[enter] - t_max;

    const double piv = tab_[leave_row][enter];
    if (std::abs(piv) <= kEps) throw numerical_error("simplex: zero pivot");
    for (double& v : tab_[leave_row]) v /= piv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == leave_row) continue;
      const double f = tab_[r][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) tab_[r][j] -= f * tab_[leave_row][j];
    }
    return true;
  }

  std::vector<Vec> tab_;
  Vec xb_;
  Vec c_;
  Vec upper_;
  std::size_t rows_, cols_;
  std::vector<std::size_t> basis_;
  std::vector<Status> status_;
};

// max gamma s.t. <p - q, z_i> >= gamma, u = p - q inside the unit ball.
// l1 ball: sum(p + q) + slack = 1. linf ball: p_j, q_j <= 1.
// Margin rows are negated so the surplus columns (plus the ball slack,
// which comes last to stay row-aligned) form the start basis.
MarginCertificate margin_by_simplex(const std::vector<Vec>& z, bool l1_ball) {
  const std::size_t n = z.size();
  const std::size_t d = z.front().size();
  const std::size_t nball = l1_ball ? 1 : 0;
  const std::size_t rows = n + nball;
  const std::size_t cols = 2 * d + 1 + n + nball; // p, q, gamma, surpluses, slack

  std::vector<Vec> tab(rows, Vec(cols, 0.0));
  Vec rhs(rows, 0.0), c(cols, 0.0), upper(cols, kInf);
  const std::size_t col_gamma = 2 * d;
  c[col_gamma] = 1.0;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      tab[i][j] = -z[i][j];    // p
      tab[i][d + j] = z[i][j]; // q
    }
    tab[i][col_gamma] = 1.0;
    tab[i][col_gamma + 1 + i] = 1.0; // surplus
  }
  if (l1_ball) {
    for (std::size_t j = 0; j < 2 * d; ++j) tab[n][j] = 1.0;
    tab[n][cols - 1] = 1.0; // ball slack
    rhs[n] = 1.0;
  } else {
    for (std::size_t j = 0; j < 2 * d; ++j) upper[j] = 1.0;
  }

  BoundedSimplex lp(std::move(tab), std::move(rhs), std::move(c), std::move(upper));
  lp.solve();
  const Vec x = lp.solution();

  Vec u(d);
  for (std::size_t j = 0; j < d; ++j) u[j] = x[j] - x[d + j];
  return certify(z, std::move(u));
}

} // namespace

MarginCertificate max_margin(const Dataset& ds, const NormSpec& n) {
  const std::vector<Vec> z = ds.signed_points();
  switch (n.kind()) {
    case NormKind::L2:
      return margin_by_coordinate_ascent(z);
    case NormKind::Mahalanobis: {
      if (n.matrix().dim() != ds.dim())
        throw std::invalid_argument("max_margin: norm dimension mismatch");
      const CholeskyFactor r = cholesky(n.matrix());
      std::vector<Vec> zw(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) zw[i] = r.solve_lower(z[i]);
      MarginCertificate white = margin_by_coordinate_ascent(zw);
      if (!white.feasible && norm2(white.u_star) == 0.0)
        return {Vec(ds.dim(), 0.0), white.gamma_star, false};
      Vec u = r.solve_lower_transposed(white.u_star);
      return certify(z, std::move(u));
    }
    case NormKind::L1:
      return margin_by_simplex(z, true);
    case NormKind::LInf:
      return margin_by_simplex(z, false);
  }
  throw std::logic_error("max_margin: unreachable");
}

MarginCertificate grid_oracle(const Dataset& ds, const NormSpec& n,
                              std::size_t resolution) {
  if (ds.dim() != 2)
    throw std::invalid_argument("grid_oracle: supports dimension 2 only");
  if (resolution < 4)
    throw std::invalid_argument("grid_oracle: resolution too small");
  const std::vector<Vec> z = ds.signed_points();

  double best = -kInf;
  Vec best_u(2, 0.0);
  for (std::size_t k = 0; k < resolution; ++k) {
    const double phi =
        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(resolution);
    Vec u = {std::cos(phi), std::sin(phi)};
    u = scaled(u, 1.0 / norm(n, u));
    const double m = min_signed_margin(z, u);
    if (m > best) {
      best = m;
      best_u = std::move(u);
    }
  }
  return {std::move(best_u), best, best > 0.0};
}

} // namespace bregman
