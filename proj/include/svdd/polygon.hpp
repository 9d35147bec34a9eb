#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "svdd/config.hpp"
#include "svdd/dataset.hpp"
#include "svdd/scoring.hpp"

namespace svdd {

using Point2 = std::array<double, 2>;

/// Random polygon r_k (cos t_k, sin t_k) with sorted uniform angles t_k and
/// uniform radii; star-shaped around the origin by construction.
struct PolygonInstance {
  std::vector<Point2> vertices;  // counterclockwise
  std::vector<double> angles;
  std::vector<double> radii;
  double r_min = 0.0;
  double r_max = 0.0;
  std::uint64_t seed = 0;

  std::size_t n_vertices() const noexcept { return vertices.size(); }
  double area() const noexcept;  // shoelace
  GridSpec bounding_grid(std::size_t resolution = kDefaultGridResolution) const;
};

/// Throws BadParams unless n >= 3 and 0 < r_min <= r_max.
PolygonInstance generate_polygon(std::size_t n_vertices, double r_min, double r_max,
                                 std::uint64_t seed);

/// Even-odd rule; points within 1e-12 of an edge count as inside.
bool point_in_polygon(const PolygonInstance& poly, Point2 z) noexcept;

/// n iid uniform interior points by rejection from the bounding box.
Dataset sample_interior(const PolygonInstance& poly, std::size_t n, std::uint64_t seed);

struct LabeledCell {
  double x = 0.0;
  double y = 0.0;
  bool inside = false;
};

/// Ground truth at cell centers, same ordering as score_grid.
std::vector<LabeledCell> label_grid(const PolygonInstance& poly, const GridSpec& spec);

struct SimulationParams {
  std::vector<std::size_t> vertex_counts;
  std::size_t polygons_per_count = 20;
  std::size_t n_sample = 600;
  double outlier_fraction = 0.001;
  std::size_t s_grid_size = 30;
  std::uint64_t seed = 0;
  double r_min = 3.0;
  double r_max = 5.0;
  double delta = kDefaultDelta;
  std::size_t resolution = kDefaultGridResolution;

  void check() const;
};

struct PolygonRecord {
  std::size_t n_vertices = 0;
  std::uint64_t seed = 0;
  double s_mean = 0.0;
  double s_median = 0.0;
  double s_max = 0.0;
  double f_mean = 0.0;
  double f_median = 0.0;
  double f_max = 0.0;
  double ratio_mean = 0.0;
  double ratio_median = 0.0;
  bool failed = false;
  std::string error;
};

struct RatioSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct VertexAggregate {
  std::size_t n_vertices = 0;
  std::size_t n_polygons = 0;
  std::size_t excluded = 0;
  RatioSummary ratio_mean;
  RatioSummary ratio_median;
};

struct SimulationReport {
  std::vector<PolygonRecord> polygons;  // (vertex_count, polygon_index) order
  std::vector<VertexAggregate> aggregates;
};

/// Five-number summary plus mean; quartiles by linear interpolation.
/// Throws BadParams on an empty sample.
RatioSummary summarize(std::vector<double> values);

/// Scores one polygon: criterion bandwidths, F1 of each against the labeled
/// grid, and F_max over a log grid that includes both criterion values.
PolygonRecord evaluate_polygon(const PolygonInstance& poly, const SimulationParams& params,
                               std::uint64_t sample_seed);

/// Polygon k (global index) uses seed master + k; its interior sample uses
/// sample_seed_for(master + k).
SimulationReport run_simulation(const SimulationParams& params);

std::uint64_t sample_seed_for(std::uint64_t polygon_seed) noexcept;

}  // namespace svdd
