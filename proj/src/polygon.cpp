#include "svdd/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "svdd/bandwidth.hpp"
#include "svdd/error.hpp"
#include "svdd/evaluation.hpp"
#include "svdd/parallel.hpp"
#include "svdd/random.hpp"
#include "svdd/solver.hpp"

namespace svdd {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEdgeEps = 1e-12;

// Largest angular gap between consecutive sorted angles, including the wrap.
double max_gap(const std::vector<double>& sorted) {
  double gap = kTwoPi - sorted.back() + sorted.front();
  for (std::size_t k = 1; k < sorted.size(); ++k) gap = std::max(gap, sorted[k] - sorted[k - 1]);
  return gap;
}

double segment_distance(Point2 a, Point2 b, Point2 z) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((z[0] - a[0]) * dx + (z[1] - a[1]) * dy) / len2, 0.0, 1.0);
  return std::hypot(z[0] - (a[0] + t * dx), z[1] - (a[1] + t * dy));
}

}  // namespace

double PolygonInstance::area() const noexcept {
  double twice = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point2& a = vertices[k];
    const Point2& b = vertices[(k + 1) % n];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * std::abs(twice);
}

GridSpec PolygonInstance::bounding_grid(std::size_t resolution) const {
  GridSpec spec;
  spec.resolution = resolution;
  spec.x_min = spec.y_min = std::numeric_limits<double>::infinity();
  spec.x_max = spec.y_max = -std::numeric_limits<double>::infinity();
  for (const Point2& v : vertices) {
    spec.x_min = std::min(spec.x_min, v[0]);
    spec.x_max = std::max(spec.x_max, v[0]);
    spec.y_min = std::min(spec.y_min, v[1]);
    spec.y_max = std::max(spec.y_max, v[1]);
  }
  return spec;
}

PolygonInstance generate_polygon(std::size_t n_vertices, double r_min, double r_max,
                                 std::uint64_t seed) {
  if (n_vertices < 3) {
    throw Error(ErrorKind::BadParams, "a polygon needs at least 3 vertices");
  }
  if (!(r_min > 0.0) || !(r_min <= r_max) || !std::isfinite(r_max)) {
    throw Error(ErrorKind::BadParams, "radii must satisfy 0 < r_min <= r_max");
  }
  Rng rng(seed);
  PolygonInstance poly;
  poly.r_min = r_min;
  poly.r_max = r_max;
  poly.seed = seed;

  // Order statistics of uniform angles on (0, 2 pi). Draws whose largest gap
  // reaches pi are redrawn: such a polygon would not contain the origin.
  std::vector<double>& angles = poly.angles;
  while (true) {
    angles.clear();
    while (angles.size() < n_vertices) {
      const double t = kTwoPi * rng.uniform();
      if (t > 0.0) angles.push_back(t);
    }
    std::sort(angles.begin(), angles.end());
    const bool distinct = std::adjacent_find(angles.begin(), angles.end()) == angles.end();
    if (distinct && max_gap(angles) < std::numbers::pi) break;
  }
  poly.radii.resize(n_vertices);
  for (double& r : poly.radii) r = rng.uniform(r_min, r_max);
  poly.vertices.resize(n_vertices);
  for (std::size_t k = 0; k < n_vertices; ++k) {
    poly.vertices[k] = {poly.radii[k] * std::cos(angles[k]), poly.radii[k] * std::sin(angles[k])};
  }
  return poly;
}

bool point_in_polygon(const PolygonInstance& poly, Point2 z) noexcept {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t k = 0; k < n; ++k) {
    if (segment_distance(v[k], v[(k + 1) % n], z) <= kEdgeEps) return true;
  }
  bool inside = false;
  for (std::size_t k = 0, prev = n - 1; k < n; prev = k++) {
    const Point2& a = v[k];
    const Point2& b = v[prev];
    if ((a[1] > z[1]) != (b[1] > z[1])) {
      const double x_cross = a[0] + (z[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
      if (z[0] < x_cross) inside = !inside;
    }
  }
  return inside;
}

Dataset sample_interior(const PolygonInstance& poly, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::BadParams, "sample size must be at least 1");
  if (poly.n_vertices() < 3 || !(poly.area() > 0.0)) {
    throw Error(ErrorKind::BadParams, "polygon has no interior");
  }
  const GridSpec box = poly.bounding_grid();
  Rng rng(seed);
  Matrix m(n, 2);
  std::size_t filled = 0;
  while (filled < n) {
    const Point2 z = {rng.uniform(box.x_min, box.x_max), rng.uniform(box.y_min, box.y_max)};
    if (!point_in_polygon(poly, z)) continue;
    m(filled, 0) = z[0];
    m(filled, 1) = z[1];
    ++filled;
  }
  return Dataset(std::move(m));
}

std::vector<LabeledCell> label_grid(const PolygonInstance& poly, const GridSpec& spec) {
  spec.check();
  const std::size_t res = spec.resolution;
  std::vector<LabeledCell> cells(res * res);
  for (std::size_t iy = 0; iy < res; ++iy) {
    const double y = spec.y_center(iy);
    for (std::size_t ix = 0; ix < res; ++ix) {
      const double x = spec.x_center(ix);
      cells[iy * res + ix] = {x, y, point_in_polygon(poly, {x, y})};
    }
  }
  return cells;
}

void SimulationParams::check() const {
  if (vertex_counts.empty()) throw Error(ErrorKind::BadParams, "no vertex counts given");
  for (std::size_t c : vertex_counts) {
    if (c < 3) throw Error(ErrorKind::BadParams, "vertex counts must be at least 3");
  }
  if (polygons_per_count < 1) throw Error(ErrorKind::BadParams, "polygons per count must be >= 1");
  if (n_sample < 2) throw Error(ErrorKind::BadParams, "sample size must be at least 2");
  if (!(outlier_fraction > 0.0 && outlier_fraction <= 1.0)) {
    throw Error(ErrorKind::BadParams, "outlier fraction must lie in (0, 1]");
  }
  if (s_grid_size < 2) throw Error(ErrorKind::BadParams, "bandwidth grid needs at least 2 points");
  if (!(r_min > 0.0) || !(r_min <= r_max)) {
    throw Error(ErrorKind::BadParams, "radii must satisfy 0 < r_min <= r_max");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::BadParams, "delta must lie in (0, 1)");
  if (resolution < 2) throw Error(ErrorKind::BadParams, "grid resolution must be at least 2");
}

std::uint64_t sample_seed_for(std::uint64_t polygon_seed) noexcept {
  return polygon_seed + 0x9E3779B97F4A7C15ULL;
}

PolygonRecord evaluate_polygon(const PolygonInstance& poly, const SimulationParams& params,
                               std::uint64_t sample_seed) {
  PolygonRecord rec;
  rec.n_vertices = poly.n_vertices();
  rec.seed = poly.seed;
  try {
    const Dataset data = sample_interior(poly, params.n_sample, sample_seed);
    rec.s_mean = mean_criterion(data, params.delta);
    rec.s_median = median_criterion(data, params.delta);

    const std::vector<LabeledCell> cells = label_grid(poly, poly.bounding_grid(params.resolution));
    Dataset truth(Matrix(cells.size(), 2));
    std::vector<Label> labels(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      truth.points(k, 0) = cells[k].x;
      truth.points(k, 1) = cells[k].y;
      labels[k] = cells[k].inside ? Label::Inlier : Label::Outlier;
    }
    truth.labels = std::move(labels);

    TrainConfig config;
    config.outlier_fraction = params.outlier_fraction;
    config.bandwidth.delta = params.delta;

    auto f1_at = [&](double s) {
      const SvddModel model = train_with_bandwidth(data, s, config);
      return evaluate_model(model, truth, PositiveClass::Inlier).f1;
    };
    rec.f_mean = f1_at(rec.s_mean);
    rec.f_median = f1_at(rec.s_median);

    rec.f_max = rec.f_mean;
    rec.s_max = rec.s_mean;
    auto consider = [&](double s, double f1) {
      if (f1 > rec.f_max || (f1 == rec.f_max && s < rec.s_max)) {
        rec.f_max = f1;
        rec.s_max = s;
      }
    };
    consider(rec.s_median, rec.f_median);
    for (double s : log_spaced(rec.s_mean / 10.0, rec.s_mean * 10.0, params.s_grid_size)) {
      consider(s, f1_at(s));
    }
    if (!(rec.f_max > 0.0)) {
      throw Error(ErrorKind::AllFailed, "every bandwidth scored F1 = 0");
    }
    rec.ratio_mean = rec.f_mean / rec.f_max;
    rec.ratio_median = rec.f_median / rec.f_max;
  } catch (const Error& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  return rec;
}

RatioSummary summarize(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::BadParams, "cannot summarize an empty sample");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  RatioSummary s;
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(values.size());
  return s;
}

SimulationReport run_simulation(const SimulationParams& params) {
  params.check();
  const std::size_t per = params.polygons_per_count;
  const std::size_t total = params.vertex_counts.size() * per;

  SimulationReport report;
  report.polygons.resize(total);
  parallel_for(total, [&](std::size_t k) {
    const std::size_t n_vertices = params.vertex_counts[k / per];
    const std::uint64_t seed = params.seed + k;
    PolygonRecord rec;
    try {
      const PolygonInstance poly = generate_polygon(n_vertices, params.r_min, params.r_max, seed);
      rec = evaluate_polygon(poly, params, sample_seed_for(seed));
    } catch (const Error& e) {
      rec.n_vertices = n_vertices;
      rec.seed = seed;
      rec.failed = true;
      rec.error = e.what();
    }
    report.polygons[k] = std::move(rec);
  });

  for (std::size_t c = 0; c < params.vertex_counts.size(); ++c) {
    VertexAggregate agg;
    agg.n_vertices = params.vertex_counts[c];
    std::vector<double> mean_ratios;
    std::vector<double> median_ratios;
    for (std::size_t k = c * per; k < (c + 1) * per; ++k) {
      const PolygonRecord& rec = report.polygons[k];
      if (rec.failed) {
        ++agg.excluded;
        continue;
      }
      mean_ratios.push_back(rec.ratio_mean);
      median_ratios.push_back(rec.ratio_median);
    }
    agg.n_polygons = mean_ratios.size();
    if (!mean_ratios.empty()) {
      agg.ratio_mean = summarize(std::move(mean_ratios));
      agg.ratio_median = summarize(std::move(median_ratios));
    }
    report.aggregates.push_back(agg);
  }
  return report;
}

}  // namespace svdd
