// Independent reference computations used only by the tests. Nothing here
// calls into the library code paths it is used to check.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "svdd/dataset.hpp"

namespace oracle {

inline double sq_dist(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
  return acc;
}

/// sum_{i<j} ||xi - xj||^2 / C(N, 2) by the double loop.
inline double mean_sq_pairwise(const svdd::Dataset& d) {
  const std::size_t n = d.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) total += sq_dist(d.row(i), d.row(j));
  return total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

/// Median of the sorted pairwise distance list.
inline double median_pairwise(const svdd::Dataset& d) {
  std::vector<double> all;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) all.push_back(std::sqrt(sq_dist(d.row(i), d.row(j))));
  std::sort(all.begin(), all.end());
  const std::size_t m = all.size();
  return m % 2 == 1 ? all[m / 2] : 0.5 * (all[m / 2 - 1] + all[m / 2]);
}

/// Weighted mean-criterion bandwidth from the physically expanded data: every
/// row i is materialized w_i times with its origin recorded, and W, M, Q and
/// the pairwise numerator are counted directly on the expanded rows.
inline double expanded_weighted_bandwidth(const svdd::Dataset& d, double delta) {
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (int r = 0; r < static_cast<int>((*d.weights)[i]); ++r) origin.push_back(i);
  const std::size_t big_w = origin.size();
  std::vector<double> counts(d.size(), 0.0);
  for (std::size_t o : origin) counts[o] += 1.0;
  double m = 0.0;
  for (double c : counts) m += c * c;
  double q = 0.0;
  double numerator = 0.0;
  for (std::size_t a = 0; a < big_w; ++a) {
    for (std::size_t b = a + 1; b < big_w; ++b) {
      if (origin[a] == origin[b]) continue;
      q += 1.0;
      numerator += sq_dist(d.row(origin[a]), d.row(origin[b]));
    }
  }
  return std::sqrt(numerator / (q * std::log(2.0 * q / (delta * delta * m))));
}

/// Euclidean projection onto {a : sum a = 1, 0 <= a <= c} by bisection on the shift.
inline std::vector<double> project_capped_simplex(const std::vector<double>& v, double c) {
  double lo = *std::min_element(v.begin(), v.end()) - c - 1.0;
  double hi = *std::max_element(v.begin(), v.end()) + 1.0;
  std::vector<double> out(v.size());
  for (int it = 0; it < 200; ++it) {
    const double tau = 0.5 * (lo + hi);
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) sum += std::clamp(v[i] - tau, 0.0, c);
    if (sum > 1.0) lo = tau; else hi = tau;
  }
  const double tau = 0.5 * (lo + hi);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::clamp(v[i] - tau, 0.0, c);
  return out;
}

/// Dense symmetric matrix-vector product.
inline std::vector<double> matvec(const svdd::Matrix& k, const std::vector<double>& x) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += k(i, j) * x[j];
  return y;
}

inline double quad(const svdd::Matrix& k, const std::vector<double>& x) {
  const auto kx = matvec(k, x);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * kx[i];
  return acc;
}

/// Largest eigenvalue of a symmetric PSD matrix by power iteration.
inline double spectral_norm(const svdd::Matrix& k) {
  std::vector<double> x(k.rows(), 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    auto y = matvec(k, x);
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] / norm;
    lambda = norm;
  }
  return lambda;
}

/// Minimizes a'Ka over the capped simplex by projected gradient with step
/// 1/||K|| on the gradient of a'Ka / 2, using Nesterov momentum.
inline std::vector<double> projected_gradient(const svdd::Matrix& k, double c,
                                              std::size_t iterations = 100000) {
  const std::size_t n = k.rows();
  const double step = 1.0 / spectral_norm(k);
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> y = x;
  double t = 1.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto g = matvec(k, y);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] - step * g[i];
    auto next = project_capped_simplex(v, c);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = next[i] + (t - 1.0) / t_next * (next[i] - x[i]);
      moved = std::max(moved, std::abs(next[i] - x[i]));
    }
    x = std::move(next);
    t = t_next;
    if (moved < 1e-15) break;
  }
  return x;
}

using P2 = std::array<double, 2>;

/// Winding number of the closed polyline around z (nonzero means inside).
inline int winding_number(const std::vector<P2>& v, P2 z) {
  int wn = 0;
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    const P2& a = v[k];
    const P2& b = v[(k + 1) % n];
    const double cross = (b[0] - a[0]) * (z[1] - a[1]) - (z[0] - a[0]) * (b[1] - a[1]);
    if (a[1] <= z[1]) {
      if (b[1] > z[1] && cross > 0) ++wn;
    } else if (b[1] <= z[1] && cross < 0) {
      --wn;
    }
  }
  return wn;
}

inline double shoelace(const std::vector<P2>& v) {
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const P2& a = v[k];
    const P2& b = v[(k + 1) % v.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return 0.5 * std::abs(s);
}

/// Number of polygon edges hit by the ray from the origin at angle theta.
inline int ray_crossings(const std::vector<P2>& v, double theta) {
  const double dx = std::cos(theta);
  const double dy = std::sin(theta);
  int hits = 0;
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    const P2& a = v[k];
    const P2& b = v[(k + 1) % n];
    // Solve t*(dx,dy) = a + u*(b - a), t > 0, u in [0, 1).
    const double ex = b[0] - a[0];
    const double ey = b[1] - a[1];
    const double det = dx * (-ey) - dy * (-ex);
    if (std::abs(det) < 1e-15) continue;
    const double t = (a[0] * (-ey) - a[1] * (-ex)) / det;
    const double u = (dx * a[1] - dy * a[0]) / det;
    if (t > 0 && u >= 0 && u < 1) ++hits;
  }
  return hits;
}

}  // namespace oracle
