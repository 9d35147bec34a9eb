#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "svdd/config.hpp"
#include "svdd/dataset.hpp"

namespace svdd {

/// Summary of the pairwise distance multiset of a dataset.
struct PairwiseStats {
  double mean_sq_dist = 0.0;  // mean of ||xi - xj||^2 over i < j
  double median_dist = 0.0;   // median of ||xi - xj|| over i < j
  std::size_t n_pairs = 0;
};

/// Mean squared pairwise distance in one pass through the population column
/// variances: 2N/(N-1) * sum_j var_j. O(Np) time, O(p) space.
double mean_sq_pairwise_closed_form(const Dataset& data);

/// Median of the pairwise Euclidean distances. When `sample` is set and
/// smaller than N, the median is taken over a seeded subsample of rows.
double median_pairwise_distance(const Dataset& data, std::optional<std::size_t> sample = {},
                                std::uint64_t seed = 0);

/// Exact statistics over all N(N-1)/2 pairs (quadratic cost).
PairwiseStats pairwise_stats(const Dataset& data);

/// ln((N-1)/delta^2); throws LogDomain when the argument is <= 1.
double log_term(std::size_t n, double delta);

/// s = sqrt(Dbar^2 / ln((N-1)/delta^2)).
double mean_criterion(const Dataset& data, double delta = kDefaultDelta);

/// s = median_{i<j} ||xi - xj|| / sqrt(ln((N-1)/delta^2)).
///
/// Without an explicit sample, the median is exact for N <= kExactMedianMaxRows
/// and uses a kDefaultMedianSample subsample above that. The ln term always
/// uses the full N.
double median_criterion(const Dataset& data, double delta = kDefaultDelta,
                        std::optional<std::size_t> sample = {},
                        std::optional<std::uint64_t> seed = {}, bool force_exact = false);

/// s = median_{i<j} ||xi - xj|| / sqrt(2).
double median2_criterion(const Dataset& data);

/// Repeat-count version of the mean criterion:
/// s = sqrt(W^2 sum var_w / (Q ln(2Q / (delta^2 M)))) with W = sum w,
/// M = sum w^2, Q = (W^2 - M)/2 and weighted population variances.
double weighted_mean_criterion(const Dataset& data, double delta = kDefaultDelta);

/// Dispatches on config.criterion. Uses the weighted formula for the mean
/// criterion when the dataset carries weights.
double select_bandwidth(const Dataset& data, const BandwidthConfig& config);

}  // namespace svdd
