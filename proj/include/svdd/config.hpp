#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace svdd {

/// sqrt(2) * 1e-6, the tolerance factor that works for most data.
inline const double kDefaultDelta = std::sqrt(2.0) * 1e-6;

/// Exact median over all pairs up to this many rows; subsample above it.
inline constexpr std::size_t kExactMedianMaxRows = 2000;
inline constexpr std::size_t kDefaultMedianSample = 2000;

inline constexpr std::size_t kMinIterationLimit = 100000;
inline constexpr double kDefaultKktTolerance = 1e-6;

enum class Criterion { Mean, Median, Median2, Fixed };

std::string_view to_string(Criterion c) noexcept;
std::optional<Criterion> parse_criterion(std::string_view name) noexcept;

struct BandwidthConfig {
  Criterion criterion = Criterion::Mean;
  double delta = kDefaultDelta;
  std::optional<double> fixed_value;
  std::optional<std::size_t> median_sample_size;
  std::optional<std::uint64_t> seed;
  // Median over every pair even above kExactMedianMaxRows.
  bool force_exact_median = false;

  /// Throws BadConfig unless 0 < delta < 1 and a fixed criterion has a value > 0.
  void check() const;
};

struct TrainConfig {
  double outlier_fraction = 0.001;
  double kkt_tolerance = kDefaultKktTolerance;
  // 0 selects max(100 N, 100000) at train time. Small, nearly singular
  // kernels (dense 1-D data) can need a little over 100 N pair updates.
  std::size_t max_iterations = 0;
  BandwidthConfig bandwidth;

  void check() const;
  std::size_t iteration_limit(std::size_t n) const noexcept {
    return max_iterations > 0 ? max_iterations : std::max<std::size_t>(100 * n, kMinIterationLimit);
  }
};

}  // namespace svdd
