#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "svdd/config.hpp"
#include "svdd/dataset.hpp"

namespace svdd {

/// Where a training point sits relative to the description boundary.
enum class Position : std::uint8_t { Inside, Boundary, Outside };

std::string_view to_string(Position p) noexcept;

/// How the model was obtained; persisted alongside the model.
struct Provenance {
  Criterion criterion = Criterion::Fixed;
  double delta = kDefaultDelta;
  double outlier_fraction = 0.0;
  std::size_t n_train = 0;
  bool converged = true;
  double kkt_violation = 0.0;
  std::size_t iterations = 0;
  // Bounding box of the training data, per dimension.
  std::vector<double> data_min;
  std::vector<double> data_max;
};

/// A trained Gaussian-kernel data description. The center is implicit as
/// sum_i alpha_i phi(x_i); only the support vectors are kept.
struct SvddModel {
  Matrix support_vectors;
  std::vector<double> alphas;
  double bandwidth = 1.0;
  double penalty = 1.0;
  double threshold = 0.0;     // R^2
  double sv_self_term = 0.0;  // sum_ij alpha_i alpha_j K(x_i, x_j)
  // One tag per training row; empty for models loaded from disk.
  std::vector<Position> position_tags;
  // Training row index of each support vector; empty for loaded models.
  std::vector<std::size_t> sv_indices;
  Provenance provenance;

  std::size_t dim() const noexcept { return support_vectors.cols(); }
  std::size_t n_support() const noexcept { return alphas.size(); }
  std::size_t count(Position p) const noexcept;
};

}  // namespace svdd
