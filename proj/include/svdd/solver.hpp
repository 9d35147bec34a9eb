#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>

#include "svdd/config.hpp"
#include "svdd/dataset.hpp"
#include "svdd/model.hpp"

namespace svdd {

/// Largest training set for which the kernel matrix is materialized.
inline constexpr std::size_t kMaxDenseRows = 20000;

/// Squared Euclidean distance by direct subtraction.
inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

/// exp(-d2 / (2 s^2)). All kernel evaluations go through here so training
/// and scoring agree to the last bit.
inline double gaussian_kernel(double sq_dist, double s) noexcept {
  return std::exp(-sq_dist / (2.0 * s * s));
}

/// Symmetric Gaussian kernel matrix with an exact unit diagonal.
/// Throws BadBandwidth for s <= 0 or non-finite, TooLarge above kMaxDenseRows.
Matrix kernel_matrix(const Dataset& data, double s);

struct DualSolution {
  std::vector<double> alphas;
  double objective = 0.0;  // 1 - a'Ka
  std::size_t iterations = 0;
  bool converged = false;
  double kkt_violation = 0.0;
};

/// Called after every pair update with the iteration count and current alphas.
using IterationObserver = std::function<void(std::size_t, std::span<const double>)>;

/// Minimizes a'Ka subject to sum a = 1, 0 <= a <= C by pairwise coordinate
/// descent on a violating pair (most violating index, second-order partner).
/// Every iterate is feasible.
/// Throws Infeasible when N*C < 1. Non-convergence is reported, not thrown.
DualSolution solve_dual(const Matrix& kernel, double penalty, double tol, std::size_t max_iter,
                        const IterationObserver& observer = {});

/// Max over {a < C} and {a > 0} of the gradient gap; 0 if either set is empty.
double kkt_violation(const Matrix& kernel, std::span<const double> alphas, double penalty);

/// Resolves the bandwidth, solves the dual and assembles the model.
SvddModel train(const Dataset& data, const TrainConfig& config);

/// Same, with a bandwidth already chosen (criterion recorded as given).
SvddModel train_with_bandwidth(const Dataset& data, double s, const TrainConfig& config,
                               Criterion criterion = Criterion::Fixed);

/// R^2 evaluated at one training point: the model's dist^2 at that row.
double threshold_at(const SvddModel& model, std::span<const double> x);

}  // namespace svdd
