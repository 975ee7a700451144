#pragma once

#include <cstdint>
#include <string>

#include "bregman/linalg.hpp"

namespace bregman {

struct LabeledPoint {
  Vec x;
  int y; // +1 or -1
};

// Non-empty list of labeled points sharing one dimension, finite entries.
class Dataset {
 public:
  explicit Dataset(std::vector<LabeledPoint> points);

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return dim_; }
  const LabeledPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<LabeledPoint>& points() const { return points_; }

  // y_i * x_i for all i
  std::vector<Vec> signed_points() const;

 private:
  std::vector<LabeledPoint> points_;
  std::size_t dim_;
};

// true iff min_i y_i <u, x_i> > 0
bool separates(const Dataset& ds, const Vec& u);

struct DatasetStats {
  std::size_t n;
  std::size_t d;
  double d_dual; // max_i dual_norm(N, x_i)
  double d_2;    // max_i ||x_i||_2
};

DatasetStats stats(const Dataset& ds, const NormSpec& n);

// The four-point plane set used across the solver experiments:
// {((-0.5,1),+1), ((-0.5,-1),-1), ((-0.75,-1),-1), ((2,1),+1)}.
// Separable with l2 max margin 1 attained by u = (0,1).
Dataset fixture_four_point();

struct SpheresConfig {
  std::size_t n_labeled = 2;
  std::size_t m_unlabeled = 100;
  std::size_t d = 2;
  double r = 0.8;
  std::uint64_t seed = 1;
};

struct SpheresSample {
  Dataset labeled;
  std::vector<Vec> unlabeled;
  Vec mu;
};

// mu uniform on the unit sphere; each point: label y = +/-1 by fair coin,
// x uniform on the radius-r sphere centered at y*mu. Unlabeled points are
// drawn the same way with the label discarded. One seed, one sample:
// repeated calls reproduce bit-identically.
SpheresSample gen_spheres(const SpheresConfig& cfg);

struct TightnessProblem {
  Dataset data;
  Vec z; // the generating direction (1, 1/sqrt(m), ..., 1/sqrt(m))
};

// Two points {(z, +1), (-z, -1)} with z = (1, 1/sqrt(m), ..., 1/sqrt(m)) in R^m.
TightnessProblem gen_tightness(std::size_t m);

// Second moment (1/m) sum x x^T. Throws numerical_error when the result is
// not positive definite (points do not span R^d).
SymMatrix empirical_covariance(const std::vector<Vec>& points);

// CSV rows: d feature columns then a label column in {+1,-1}. One optional
// header line, detected by a non-numeric first field. Errors cite 1-based
// line numbers.
Dataset load_csv(const std::string& path);

std::string dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const std::string& text);

} // namespace bregman
