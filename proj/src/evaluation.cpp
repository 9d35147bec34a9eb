#include "svdd/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "svdd/bandwidth.hpp"
#include "svdd/error.hpp"
#include "svdd/parallel.hpp"
#include "svdd/solver.hpp"

namespace svdd {

double f1_score(const ConfusionCounts& c) noexcept {
  const double denom = 2.0 * static_cast<double>(c.tp) + static_cast<double>(c.fn) +
                       static_cast<double>(c.fp);
  if (denom == 0.0) return 0.0;
  return 2.0 * static_cast<double>(c.tp) / denom;
}

ConfusionCounts confusion(std::span<const bool> predicted_outlier,
                          std::span<const bool> actual_outlier, PositiveClass positive) {
  if (predicted_outlier.size() != actual_outlier.size()) {
    throw Error(ErrorKind::LabelMismatch, "prediction and label counts differ");
  }
  const bool positive_is_outlier = positive == PositiveClass::Outlier;
  ConfusionCounts c;
  for (std::size_t i = 0; i < predicted_outlier.size(); ++i) {
    const bool pred = predicted_outlier[i] == positive_is_outlier;
    const bool truth = actual_outlier[i] == positive_is_outlier;
    if (pred && truth) ++c.tp;
    else if (pred) ++c.fp;
    else if (truth) ++c.fn;
    else ++c.tn;
  }
  return c;
}

Evaluation evaluate_model(const SvddModel& model, const Dataset& labeled, PositiveClass positive) {
  if (!labeled.labels) throw Error(ErrorKind::MissingLabels, "evaluation data carries no labels");
  check_batch(labeled, model.dim());
  const ScoreReport report = classify(model, labeled);
  // std::vector<bool> has no contiguous storage; copy into plain arrays.
  const std::size_t n = labeled.size();
  std::unique_ptr<bool[]> predicted(new bool[n]);
  std::unique_ptr<bool[]> actual(new bool[n]);
  for (std::size_t i = 0; i < n; ++i) {
    predicted[i] = report.is_outlier[i];
    actual[i] = (*labeled.labels)[i] == Label::Outlier;
  }
  Evaluation ev;
  ev.counts = confusion({predicted.get(), n}, {actual.get(), n}, positive);
  ev.f1 = f1_score(ev.counts);
  return ev;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw Error(ErrorKind::BadParams, "log grid needs 0 < lo <= hi and count >= 1");
  }
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_bandwidth_grid(const Dataset& train, double delta, std::size_t count) {
  const double s = mean_criterion(train, delta);
  std::vector<double> grid = log_spaced(s / 10.0, s * 10.0, count);
  grid.push_back(s);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

BandwidthSearchResult bandwidth_grid_search(const Dataset& train, const Dataset& eval,
                                            std::span<const double> s_grid,
                                            const TrainConfig& config, PositiveClass positive) {
  if (s_grid.empty()) throw Error(ErrorKind::BadParams, "bandwidth grid is empty");
  for (double s : s_grid) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorKind::BadParams, "bandwidth grid values must be positive and finite");
    }
  }
  check_dataset(train);
  if (!eval.labels) throw Error(ErrorKind::MissingLabels, "evaluation data carries no labels");
  if (eval.size() > 0 && eval.dim() != train.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "train and evaluation dimensions differ");
  }
  config.check();

  BandwidthSearchResult result;
  result.grid.resize(s_grid.size());
  parallel_for(s_grid.size(), [&](std::size_t k) {
    double f1 = -1.0;
    try {
      const SvddModel model = train_with_bandwidth(train, s_grid[k], config);
      f1 = evaluate_model(model, eval, positive).f1;
    } catch (const Error&) {
      f1 = -1.0;
    }
    result.grid[k] = {s_grid[k], f1};
  });

  bool any = false;
  for (const auto& [s, f1] : result.grid) {
    if (f1 < 0.0) {
      ++result.failures;
      continue;
    }
    if (!any || f1 > result.best_f1 || (f1 == result.best_f1 && s < result.best_s)) {
      result.best_s = s;
      result.best_f1 = f1;
      any = true;
    }
  }
  if (!any) throw Error(ErrorKind::AllFailed, "training failed for every bandwidth in the grid");
  return result;
}

}  // namespace svdd
