#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "svdd/config.hpp"
#include "svdd/dataset.hpp"
#include "svdd/model.hpp"
#include "svdd/scoring.hpp"

namespace svdd {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
};

/// 2TP / (2TP + FN + FP), or 0 when the denominator vanishes.
double f1_score(const ConfusionCounts& counts) noexcept;

/// Which ground-truth class counts as "positive" for F1.
enum class PositiveClass { Inlier, Outlier };

struct Evaluation {
  ConfusionCounts counts;
  double f1 = 0.0;
};

/// Cross-tabulates predictions against labels. Prediction and truth are
/// taken from the same boolean "is outlier" axis.
ConfusionCounts confusion(std::span<const bool> predicted_outlier,
                          std::span<const bool> actual_outlier, PositiveClass positive);

/// Throws MissingLabels or DimensionMismatch.
Evaluation evaluate_model(const SvddModel& model, const Dataset& labeled,
                          PositiveClass positive = PositiveClass::Inlier);

struct BandwidthSearchResult {
  // (s, f1) in grid order; a failed s records f1 = -1.
  std::vector<std::pair<double, double>> grid;
  double best_s = 0.0;
  double best_f1 = 0.0;
  std::size_t failures = 0;
};

/// `count` points spaced evenly in log(s) over [lo, hi].
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

/// 20 log-spaced bandwidths over [s/10, 10 s] around the mean criterion value
/// s, plus s itself, sorted ascending.
std::vector<double> default_bandwidth_grid(const Dataset& train, double delta = kDefaultDelta,
                                           std::size_t count = 20);

/// Trains one model per bandwidth (same outlier fraction) and keeps the one
/// with the highest F1 on `eval`; ties go to the smaller s. Throws AllFailed
/// when no bandwidth trains.
BandwidthSearchResult bandwidth_grid_search(const Dataset& train, const Dataset& eval,
                                            std::span<const double> s_grid,
                                            const TrainConfig& config,
                                            PositiveClass positive = PositiveClass::Inlier);

}  // namespace svdd
