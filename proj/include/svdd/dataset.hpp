#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace svdd {

/// Dense row-major matrix of doubles.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * cols_, cols_};
  }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  void append_row(std::span<const double> r);

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Ground-truth mark used only for evaluation.
enum class Label : std::uint8_t { Inlier = 0, Outlier = 1 };

/// Training or scoring observations. Weights are repeat counts; labels are
/// optional ground truth aligned with the rows.
struct Dataset {
  Matrix points;
  std::optional<std::vector<double>> weights;
  std::optional<std::vector<Label>> labels;

  Dataset() = default;
  explicit Dataset(Matrix m) : points(std::move(m)) {}

  /// Builds from nested rows; throws RaggedRows on unequal lengths.
  static Dataset from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return points.rows(); }
  std::size_t dim() const noexcept { return points.cols(); }
  std::span<const double> row(std::size_t i) const noexcept { return points.row(i); }
};

/// Returns `raw` unchanged when it satisfies the dataset invariants:
/// N >= 1, p >= 1, finite coordinates, integral weights >= 1, one label per row.
Dataset validate_dataset(Dataset raw);

/// Same checks without copying.
void check_dataset(const Dataset& data);

/// Checks only the row-level invariants; an empty batch (N = 0) is allowed.
void check_batch(const Dataset& batch, std::size_t expected_dim);

}  // namespace svdd
