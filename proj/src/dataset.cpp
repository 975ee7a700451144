#include "bregman/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bregman/rng.hpp"

namespace bregman {

Dataset::Dataset(std::vector<LabeledPoint> points) : points_(std::move(points)) {
  if (points_.empty())
    throw std::invalid_argument("Dataset: needs at least one point");
  dim_ = points_.front().x.size();
  if (dim_ == 0) throw std::invalid_argument("Dataset: zero-dimensional point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const LabeledPoint& p = points_[i];
    if (p.x.size() != dim_)
      throw std::invalid_argument("Dataset: point " + std::to_string(i) +
                                  " has dimension " + std::to_string(p.x.size()) +
                                  ", expected " + std::to_string(dim_));
    if (p.y != 1 && p.y != -1)
      throw std::invalid_argument("Dataset: point " + std::to_string(i) +
                                  " has label " + std::to_string(p.y) +
                                  ", expected +1 or -1");
    if (!all_finite(p.x))
      throw std::invalid_argument("Dataset: point " + std::to_string(i) +
                                  " has a non-finite entry");
  }
}

std::vector<Vec> Dataset::signed_points() const {
  std::vector<Vec> out;
  out.reserve(points_.size());
  for (const LabeledPoint& p : points_)
    out.push_back(scaled(p.x, static_cast<double>(p.y)));
  return out;
}

bool separates(const Dataset& ds, const Vec& u) {
  for (const LabeledPoint& p : ds.points())
    if (p.y * dot(u, p.x) <= 0.0) return false;
  return true;
}

DatasetStats stats(const Dataset& ds, const NormSpec& n) {
  const NormSpec dual = n.dual();
  double d_dual = 0.0, d_2 = 0.0;
  for (const LabeledPoint& p : ds.points()) {
    d_dual = std::max(d_dual, dual.value(p.x));
    d_2 = std::max(d_2, norm2(p.x));
  }
  return {ds.size(), ds.dim(), d_dual, d_2};
}

Dataset fixture_four_point() {
  return Dataset({{{-0.5, 1.0}, 1},
                  {{-0.5, -1.0}, -1},
                  {{-0.75, -1.0}, -1},
                  {{2.0, 1.0}, 1}});
}

SpheresSample gen_spheres(const SpheresConfig& cfg) {
  if (cfg.d < 2) throw std::invalid_argument("gen_spheres: d must be >= 2");
  if (cfg.r <= 0.0) throw std::invalid_argument("gen_spheres: r must be positive");
  if (cfg.n_labeled == 0)
    throw std::invalid_argument("gen_spheres: needs at least one labeled point");

  CounterRng rng(cfg.seed);
  const Vec mu = rng.next_on_sphere(cfg.d, 1.0);

  auto draw = [&](int& y_out) {
    y_out = rng.next_sign();
    Vec x = rng.next_on_sphere(cfg.d, cfg.r);
    axpy(x, static_cast<double>(y_out), mu);
    return x;
  };

  std::vector<LabeledPoint> labeled;
  labeled.reserve(cfg.n_labeled);
  for (std::size_t i = 0; i < cfg.n_labeled; ++i) {
    int y;
    Vec x = draw(y);
    labeled.push_back({std::move(x), y});
  }
  std::vector<Vec> unlabeled;
  unlabeled.reserve(cfg.m_unlabeled);
  for (std::size_t i = 0; i < cfg.m_unlabeled; ++i) {
    int y;
    unlabeled.push_back(draw(y)); // same stream shape, label discarded
  }
  return {Dataset(std::move(labeled)), std::move(unlabeled), mu};
}

TightnessProblem gen_tightness(std::size_t m) {
  if (m < 1) throw std::invalid_argument("gen_tightness: m must be >= 1");
  Vec z(m, 1.0 / std::sqrt(static_cast<double>(m)));
  z[0] = 1.0;
  return {Dataset({{z, 1}, {scaled(z, -1.0), -1}}), z};
}

SymMatrix empirical_covariance(const std::vector<Vec>& points) {
  if (points.empty())
    throw std::invalid_argument("empirical_covariance: no points");
  const std::size_t d = points.front().size();
  std::vector<Vec> acc(d, Vec(d, 0.0));
  for (const Vec& x : points) {
    if (x.size() != d)
      throw std::invalid_argument("empirical_covariance: dimension mismatch");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) acc[i][j] += x[i] * x[j];
  }
  const double inv_m = 1.0 / static_cast<double>(points.size());
  for (Vec& row : acc)
    for (double& v : row) v *= inv_m;
  SymMatrix cov = SymMatrix::from_rows(acc);
  try {
    cholesky(cov);
  } catch (const numerical_error&) {
    throw numerical_error(
        "empirical_covariance: moment matrix is not positive definite");
  }
  return cov;
}

namespace {

bool parse_double(const std::string& tok, double& out) {
  std::size_t used = 0;
  try {
    out = std::stod(tok, &used);
  } catch (const std::exception&) {
    return false;
  }
  while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
    ++used;
  return used == tok.size();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

} // namespace

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path);

  std::vector<LabeledPoint> points;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    double probe;
    if (first_content_line && !parse_double(fields.front(), probe)) {
      first_content_line = false; // header line, skip
      continue;
    }
    first_content_line = false;
    if (fields.size() < 2)
      throw std::runtime_error("load_csv: line " + std::to_string(line_no) +
                               ": need at least one feature and a label");
    Vec x(fields.size() - 1);
    for (std::size_t j = 0; j + 1 < fields.size(); ++j) {
      if (!parse_double(fields[j], x[j]))
        throw std::runtime_error("load_csv: line " + std::to_string(line_no) +
                                 ": bad number '" + fields[j] + "'");
    }
    double ylab;
    if (!parse_double(fields.back(), ylab) || (ylab != 1.0 && ylab != -1.0))
      throw std::runtime_error("load_csv: line " + std::to_string(line_no) +
                               ": label must be +1 or -1, got '" +
                               fields.back() + "'");
    points.push_back({std::move(x), ylab > 0 ? 1 : -1});
  }
  if (points.empty())
    throw std::runtime_error("load_csv: " + path + " contains no data rows");
  try {
    return Dataset(std::move(points));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("load_csv: " + path + ": " + e.what());
  }
}

std::string dataset_to_json(const Dataset& ds) {
  nlohmann::json arr = nlohmann::json::array();
  for (const LabeledPoint& p : ds.points())
    arr.push_back({{"x", p.x}, {"y", p.y}});
  return arr.dump();
}

Dataset dataset_from_json(const std::string& text) {
  const nlohmann::json arr = nlohmann::json::parse(text);
  if (!arr.is_array())
    throw std::runtime_error("dataset_from_json: expected a JSON array");
  std::vector<LabeledPoint> points;
  for (const nlohmann::json& item : arr) {
    LabeledPoint p;
    p.x = item.at("x").get<Vec>();
    p.y = item.at("y").get<int>();
    points.push_back(std::move(p));
  }
  return Dataset(std::move(points));
}

} // namespace bregman
