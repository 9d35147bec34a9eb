#include "svdd/scoring.hpp"

#include <algorithm>
#include <string>

#include "svdd/error.hpp"
#include "svdd/parallel.hpp"
#include "svdd/solver.hpp"

namespace svdd {

void GridSpec::check() const {
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw Error(ErrorKind::BadParams, "grid bounds must satisfy x_min < x_max and y_min < y_max");
  }
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
      !std::isfinite(y_max)) {
    throw Error(ErrorKind::BadParams, "grid bounds must be finite");
  }
  if (resolution < 2) {
    throw Error(ErrorKind::BadParams, "grid resolution must be at least 2");
  }
}

double GridSpec::x_center(std::size_t ix) const noexcept {
  const double step = (x_max - x_min) / static_cast<double>(resolution);
  return x_min + (static_cast<double>(ix) + 0.5) * step;
}

double GridSpec::y_center(std::size_t iy) const noexcept {
  const double step = (y_max - y_min) / static_cast<double>(resolution);
  return y_min + (static_cast<double>(iy) + 0.5) * step;
}

GridSpec GridSpec::around(std::span<const double> lo, std::span<const double> hi, double margin,
                          std::size_t resolution) {
  if (lo.size() != 2 || hi.size() != 2) {
    throw Error(ErrorKind::NotTwoDimensional, "grid bounds need two dimensions");
  }
  GridSpec spec;
  spec.resolution = resolution;
  double w = hi[0] - lo[0];
  double h = hi[1] - lo[1];
  // A flat axis borrows the other axis' extent (or 1) so the box stays open.
  const double fallback = std::max({w, h, 1.0});
  if (!(w > 0.0)) w = fallback;
  if (!(h > 0.0)) h = fallback;
  const double cx = 0.5 * (lo[0] + hi[0]);
  const double cy = 0.5 * (lo[1] + hi[1]);
  spec.x_min = cx - w * (0.5 + margin);
  spec.x_max = cx + w * (0.5 + margin);
  spec.y_min = cy - h * (0.5 + margin);
  spec.y_max = cy + h * (0.5 + margin);
  return spec;
}

double distance2(const SvddModel& model, std::span<const double> z) {
  if (z.size() != model.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "observation has " + std::to_string(z.size()) +
                                                  " coordinates, model expects " +
                                                  std::to_string(model.dim()));
  }
  double cross = 0.0;
  for (std::size_t i = 0; i < model.alphas.size(); ++i) {
    cross += model.alphas[i] *
             gaussian_kernel(squared_distance(model.support_vectors.row(i), z), model.bandwidth);
  }
  return std::max(0.0, 1.0 - 2.0 * cross + model.sv_self_term);
}

ScoreReport classify(const SvddModel& model, const Dataset& batch) {
  check_batch(batch, model.dim());
  const std::size_t n = batch.size();
  ScoreReport report;
  report.dist2.resize(n);
  parallel_for(n, [&](std::size_t i) { report.dist2[i] = distance2(model, batch.row(i)); });
  report.is_outlier.resize(n);
  for (std::size_t i = 0; i < n; ++i) report.is_outlier[i] = report.dist2[i] > model.threshold;
  return report;
}

std::vector<GridCell> score_grid(const SvddModel& model, const GridSpec& spec) {
  if (model.dim() != 2) {
    throw Error(ErrorKind::NotTwoDimensional,
                "grid scoring needs a 2-D model, got p = " + std::to_string(model.dim()));
  }
  spec.check();
  const std::size_t res = spec.resolution;
  Matrix centers(res * res, 2);
  for (std::size_t iy = 0; iy < res; ++iy) {
    for (std::size_t ix = 0; ix < res; ++ix) {
      centers(iy * res + ix, 0) = spec.x_center(ix);
      centers(iy * res + ix, 1) = spec.y_center(iy);
    }
  }
  const Dataset batch(std::move(centers));
  const ScoreReport report = classify(model, batch);
  std::vector<GridCell> cells(batch.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    cells[k] = {batch.points(k, 0), batch.points(k, 1), report.dist2[k], !report.is_outlier[k]};
  }
  return cells;
}

GridSpec default_grid(const SvddModel& model, std::size_t resolution) {
  if (model.dim() != 2) {
    throw Error(ErrorKind::NotTwoDimensional,
                "grid scoring needs a 2-D model, got p = " + std::to_string(model.dim()));
  }
  const auto& prov = model.provenance;
  if (prov.data_min.size() == 2 && prov.data_max.size() == 2) {
    return GridSpec::around(prov.data_min, prov.data_max, 0.1, resolution);
  }
  std::vector<double> lo(2, std::numeric_limits<double>::infinity());
  std::vector<double> hi(2, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < model.n_support(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      lo[j] = std::min(lo[j], model.support_vectors(i, j));
      hi[j] = std::max(hi[j], model.support_vectors(i, j));
    }
  }
  return GridSpec::around(lo, hi, 0.1, resolution);
}

}  // namespace svdd
