#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "svdd/dataset.hpp"
#include "svdd/model.hpp"

namespace svdd {

inline constexpr std::size_t kDefaultGridResolution = 200;

/// Rectangle scored at cell centers, resolution cells per axis.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  std::size_t resolution = kDefaultGridResolution;

  void check() const;
  double x_center(std::size_t ix) const noexcept;
  double y_center(std::size_t iy) const noexcept;

  /// Box [lo, hi] on each axis widened by `margin` of its extent per side.
  static GridSpec around(std::span<const double> lo, std::span<const double> hi,
                         double margin = 0.1, std::size_t resolution = kDefaultGridResolution);
};

struct ScoreReport {
  std::vector<double> dist2;
  std::vector<bool> is_outlier;

  std::size_t size() const noexcept { return dist2.size(); }
};

struct GridCell {
  double x = 0.0;
  double y = 0.0;
  double dist2 = 0.0;
  bool inlier = false;
};

/// 1 - 2 sum_i a_i K(x_i, z) + sv_self_term, clamped at 0.
double distance2(const SvddModel& model, std::span<const double> z);

/// Outlier iff dist^2 > R^2; ties are inliers. Empty batches are fine.
ScoreReport classify(const SvddModel& model, const Dataset& batch);

/// Row-major cells, y outer and x inner, both ascending.
std::vector<GridCell> score_grid(const SvddModel& model, const GridSpec& spec);

/// Training bounding box widened by 10% per side (support vectors if the
/// model carries no box).
GridSpec default_grid(const SvddModel& model, std::size_t resolution = kDefaultGridResolution);

}  // namespace svdd
