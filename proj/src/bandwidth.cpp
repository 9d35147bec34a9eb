#include "svdd/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "svdd/error.hpp"
#include "svdd/random.hpp"
#include "svdd/solver.hpp"

namespace svdd {
namespace {

void require_pairs(const Dataset& data) {
  check_dataset(data);
  if (data.size() < 2) {
    throw Error(ErrorKind::TooFewPoints, "need at least 2 rows, got " + std::to_string(data.size()));
  }
}

// Median of the pairwise distances among the given rows. The distance
// multiset is selected in place; order of the multiset does not matter.
double median_distance_over(const Dataset& data, std::span<const std::size_t> rows) {
  const std::size_t n = rows.size();
  std::vector<double> dist;
  dist.reserve(n * (n - 1) / 2);
  for (std::size_t a = 0; a < n; ++a) {
    const auto xa = data.row(rows[a]);
    for (std::size_t b = a + 1; b < n; ++b) {
      dist.push_back(std::sqrt(squared_distance(xa, data.row(rows[b]))));
    }
  }
  const std::size_t m = dist.size();
  const std::size_t mid = m / 2;
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid), dist.end());
  const double upper = dist[mid];
  if (m % 2 == 1) return upper;
  const double lower = *std::max_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

double mean_sq_pairwise_closed_form(const Dataset& data) {
  require_pairs(data);
  const std::size_t n = data.size();
  const std::size_t p = data.dim();

  std::vector<double> mean(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = data.row(i);
    for (std::size_t j = 0; j < p; ++j) mean[j] += x[j];
  }
  for (double& m : mean) m /= static_cast<double>(n);

  std::vector<double> ss(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = data.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      const double d = x[j] - mean[j];
      ss[j] += d * d;
    }
  }
  double var_sum = 0.0;
  for (double s : ss) var_sum += s / static_cast<double>(n);

  const double nd = static_cast<double>(n);
  return 2.0 * nd / (nd - 1.0) * var_sum;
}

PairwiseStats pairwise_stats(const Dataset& data) {
  require_pairs(data);
  const std::size_t n = data.size();
  PairwiseStats stats;
  stats.n_pairs = n * (n - 1) / 2;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) total += squared_distance(data.row(i), data.row(j));
  }
  stats.mean_sq_dist = total / static_cast<double>(stats.n_pairs);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  stats.median_dist = median_distance_over(data, all);
  return stats;
}

double median_pairwise_distance(const Dataset& data, std::optional<std::size_t> sample,
                                std::uint64_t seed) {
  require_pairs(data);
  const std::size_t n = data.size();
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  if (sample && *sample < n) {
    if (*sample < 2) throw Error(ErrorKind::BadConfig, "median sample size must be at least 2");
    // Partial Fisher-Yates: the first `sample` slots form a uniform subset.
    Rng rng(seed);
    for (std::size_t i = 0; i < *sample; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(rows[i], rows[j]);
    }
    rows.resize(*sample);
  } else if (sample && *sample > n) {
    throw Error(ErrorKind::BadConfig, "median sample size " + std::to_string(*sample) +
                                          " exceeds N = " + std::to_string(n));
  }
  return median_distance_over(data, rows);
}

double log_term(std::size_t n, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::BadConfig, "delta must lie in (0, 1)");
  }
  const double arg = (static_cast<double>(n) - 1.0) / (delta * delta);
  if (!(arg > 1.0)) {
    throw Error(ErrorKind::LogDomain, "(N-1)/delta^2 = " + std::to_string(arg) + " is not > 1");
  }
  return std::log(arg);
}

double mean_criterion(const Dataset& data, double delta) {
  const double d2 = mean_sq_pairwise_closed_form(data);
  if (!(d2 > 0.0)) {
    throw Error(ErrorKind::DegenerateData, "all rows are identical (mean squared distance 0)");
  }
  return std::sqrt(d2 / log_term(data.size(), delta));
}

double median_criterion(const Dataset& data, double delta, std::optional<std::size_t> sample,
                        std::optional<std::uint64_t> seed, bool force_exact) {
  require_pairs(data);
  const double denom = std::sqrt(log_term(data.size(), delta));
  if (!sample && !force_exact && data.size() > kExactMedianMaxRows) {
    sample = kDefaultMedianSample;
  }
  const double med = median_pairwise_distance(data, sample, seed.value_or(0));
  if (!(med > 0.0)) {
    throw Error(ErrorKind::DegenerateData, "median pairwise distance is 0");
  }
  return med / denom;
}

double median2_criterion(const Dataset& data) {
  require_pairs(data);
  std::optional<std::size_t> sample;
  if (data.size() > kExactMedianMaxRows) sample = kDefaultMedianSample;
  const double med = median_pairwise_distance(data, sample, 0);
  if (!(med > 0.0)) {
    throw Error(ErrorKind::DegenerateData, "median pairwise distance is 0");
  }
  return med / std::sqrt(2.0);
}

double weighted_mean_criterion(const Dataset& data, double delta) {
  check_dataset(data);
  if (!data.weights) throw Error(ErrorKind::MissingWeights, "dataset carries no weights");
  if (data.size() < 2) {
    throw Error(ErrorKind::TooFewPoints, "need at least 2 distinct rows");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::BadConfig, "delta must lie in (0, 1)");
  }
  const auto& w = *data.weights;
  const std::size_t n = data.size();
  const std::size_t p = data.dim();

  double total_w = 0.0;
  double sum_sq_w = 0.0;
  for (double wi : w) {
    total_w += wi;
    sum_sq_w += wi * wi;
  }
  const double q = (total_w * total_w - sum_sq_w) / 2.0;

  std::vector<double> mean(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = data.row(i);
    for (std::size_t j = 0; j < p; ++j) mean[j] += w[i] * x[j];
  }
  for (double& m : mean) m /= total_w;

  double spread = 0.0;  // sum_i w_i ||x_i - mu||^2
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = data.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double d = x[j] - mean[j];
      acc += d * d;
    }
    spread += w[i] * acc;
  }
  const double var_sum = spread / total_w;
  if (!(var_sum > 0.0)) {
    throw Error(ErrorKind::DegenerateData, "weighted variance is 0");
  }
  const double arg = 2.0 * q / (delta * delta * sum_sq_w);
  if (!(arg > 1.0)) {
    throw Error(ErrorKind::LogDomain, "2Q/(delta^2 M) = " + std::to_string(arg) + " is not > 1");
  }
  return std::sqrt(total_w * total_w * var_sum / (q * std::log(arg)));
}

double select_bandwidth(const Dataset& data, const BandwidthConfig& config) {
  config.check();
  switch (config.criterion) {
    case Criterion::Mean:
      return data.weights ? weighted_mean_criterion(data, config.delta)
                          : mean_criterion(data, config.delta);
    case Criterion::Median:
      return median_criterion(data, config.delta, config.median_sample_size, config.seed,
                              config.force_exact_median);
    case Criterion::Median2:
      return median2_criterion(data);
    case Criterion::Fixed:
      return *config.fixed_value;
  }
  throw Error(ErrorKind::BadConfig, "unknown criterion");
}

}  // namespace svdd
