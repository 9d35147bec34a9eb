#include "svdd/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "svdd/error.hpp"
#include "svdd/random.hpp"

namespace svdd::synthetic {
namespace {

constexpr double kClusterSd = 0.5;
constexpr double kClusterX = 3.0;

}  // namespace

Dataset banana(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform(0.0, std::numbers::pi);
    const double r = 4.0 + rng.normal(0.0, 0.4);
    m(i, 0) = r * std::cos(t) + rng.normal(0.0, 0.2);
    m(i, 1) = r * std::sin(t) + rng.normal(0.0, 0.2);
  }
  return Dataset(std::move(m));
}

Dataset two_clusters(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double cx = (i % 2 == 0) ? -kClusterX : kClusterX;
    m(i, 0) = rng.normal(cx, kClusterSd);
    m(i, 1) = rng.normal(0.0, kClusterSd);
  }
  return Dataset(std::move(m));
}

Dataset two_clusters_labeled(std::size_t n_inliers, std::size_t n_outliers, std::uint64_t seed) {
  Dataset out = two_clusters(n_inliers, seed);
  std::vector<Label> labels(n_inliers, Label::Inlier);
  Rng rng(seed ^ 0x5DEECE66DULL);
  std::size_t added = 0;
  while (added < n_outliers) {
    const double x = rng.uniform(-8.0, 8.0);
    const double y = rng.uniform(-5.0, 5.0);
    const double d1 = std::hypot(x + kClusterX, y);
    const double d2 = std::hypot(x - kClusterX, y);
    if (std::min(d1, d2) < 2.5) continue;
    const double row[2] = {x, y};
    out.points.append_row(row);
    labels.push_back(Label::Outlier);
    ++added;
  }
  out.labels = std::move(labels);
  return out;
}

Dataset far_frame(const Dataset& data, std::size_t n, double inner, std::uint64_t seed) {
  check_dataset(data);
  const std::size_t p = data.dim();
  std::vector<double> lo(p, std::numeric_limits<double>::infinity());
  std::vector<double> hi(p, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      lo[j] = std::min(lo[j], data.points(i, j));
      hi[j] = std::max(hi[j], data.points(i, j));
    }
  }
  double diameter = 0.0;
  for (std::size_t j = 0; j < p; ++j) diameter += (hi[j] - lo[j]) * (hi[j] - lo[j]);
  diameter = std::sqrt(diameter);
  if (!(diameter > 0.0)) diameter = 1.0;

  const double gap_in = inner * diameter;
  const double gap_out = (inner + 1.0) * diameter;
  Rng rng(seed);
  Matrix m(0, p);
  std::vector<double> z(p);
  while (m.rows() < n) {
    bool beyond_inner = false;
    for (std::size_t j = 0; j < p; ++j) {
      z[j] = rng.uniform(lo[j] - gap_out, hi[j] + gap_out);
      if (z[j] < lo[j] - gap_in || z[j] > hi[j] + gap_in) beyond_inner = true;
    }
    if (beyond_inner) m.append_row(z);
  }
  return Dataset(std::move(m));
}

Dataset uniform_cloud(std::size_t n, std::size_t p, double lo, double hi, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(n, p);
  for (double& v : m.values()) v = rng.uniform(lo, hi);
  return Dataset(std::move(m));
}

}  // namespace svdd::synthetic
