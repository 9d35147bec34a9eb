#pragma once

#include <cstddef>
#include <cstdint>

#include "svdd/dataset.hpp"

namespace svdd::synthetic {

/// Noisy half-ring ("banana") of radius 4 centered at the origin, spread 0.4.
Dataset banana(std::size_t n, std::uint64_t seed);

/// Two isotropic Gaussian blobs (sd 0.5) centered at (-3, 0) and (3, 0),
/// points assigned alternately.
Dataset two_clusters(std::size_t n, std::uint64_t seed);

/// Two-cluster training draw plus an evaluation set of `n_inliers` fresh
/// cluster points (label Inlier) and `n_outliers` uniform points from the
/// box [-8, 8] x [-5, 5] that are at least 2.5 from both centers (Outlier).
Dataset two_clusters_labeled(std::size_t n_inliers, std::size_t n_outliers, std::uint64_t seed);

/// Uniform points in the frame between the data bounding box grown by
/// `inner` diameters and by `inner + 1` diameters.
Dataset far_frame(const Dataset& data, std::size_t n, double inner, std::uint64_t seed);

/// Uniform noise in [lo, hi)^p.
Dataset uniform_cloud(std::size_t n, std::size_t p, double lo, double hi, std::uint64_t seed);

}  // namespace svdd::synthetic
