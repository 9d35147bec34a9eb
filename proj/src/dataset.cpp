#include "svdd/dataset.hpp"

#include <cmath>
#include <string>

#include "svdd/error.hpp"

namespace svdd {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw Error(ErrorKind::RaggedRows, "matrix storage has " + std::to_string(values_.size()) +
                                           " values, expected " + std::to_string(rows_ * cols_));
  }
}

void Matrix::append_row(std::span<const double> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) {
    throw Error(ErrorKind::RaggedRows, "row " + std::to_string(rows_) + " has " +
                                           std::to_string(r.size()) + " columns, expected " +
                                           std::to_string(cols_));
  }
  values_.insert(values_.end(), r.begin(), r.end());
  ++rows_;
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m;
  for (const auto& r : rows) m.append_row(r);
  return Dataset(std::move(m));
}

void check_batch(const Dataset& batch, std::size_t expected_dim) {
  const std::size_t n = batch.size();
  if (n > 0 && batch.dim() != expected_dim) {
    throw Error(ErrorKind::DimensionMismatch, "data has " + std::to_string(batch.dim()) +
                                                  " columns, expected " +
                                                  std::to_string(expected_dim));
  }
  if (batch.points.values().size() != n * batch.dim()) {
    throw Error(ErrorKind::RaggedRows, "storage does not match N x p");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = batch.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (!std::isfinite(r[j])) {
        throw Error(ErrorKind::NonFinite, "row " + std::to_string(i) + ", column " +
                                              std::to_string(j) + " is not finite");
      }
    }
  }
  if (batch.weights) {
    if (batch.weights->size() != n) {
      throw Error(ErrorKind::BadWeights, std::to_string(batch.weights->size()) +
                                             " weights for " + std::to_string(n) + " rows");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double w = (*batch.weights)[i];
      if (!std::isfinite(w) || w < 1.0 || std::floor(w) != w) {
        throw Error(ErrorKind::BadWeights,
                    "row " + std::to_string(i) + " weight must be an integer >= 1");
      }
    }
  }
  if (batch.labels && batch.labels->size() != n) {
    throw Error(ErrorKind::LabelMismatch, std::to_string(batch.labels->size()) +
                                              " labels for " + std::to_string(n) + " rows");
  }
}

void check_dataset(const Dataset& data) {
  if (data.size() == 0) throw Error(ErrorKind::EmptyData, "dataset has no rows");
  if (data.dim() == 0) throw Error(ErrorKind::EmptyData, "dataset has no columns");
  check_batch(data, data.dim());
}

Dataset validate_dataset(Dataset raw) {
  check_dataset(raw);
  return raw;
}

}  // namespace svdd
