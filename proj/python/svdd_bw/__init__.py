"""Gaussian-kernel support vector data description with automatic bandwidths.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports it.
"""

from ._core import (
    DEFAULT_DELTA,
    RNG_ALGORITHM,
    Model,
    Polygon,
    SvddError,
    bandwidth_grid_search,
    f1_score,
    generate_polygon,
    kernel_matrix,
    mean_criterion,
    median2_criterion,
    median_criterion,
    run_simulation,
    train,
    weighted_mean_criterion,
)

__all__ = [
    "DEFAULT_DELTA",
    "RNG_ALGORITHM",
    "Model",
    "Polygon",
    "SvddError",
    "bandwidth_grid_search",
    "f1_score",
    "generate_polygon",
    "kernel_matrix",
    "mean_criterion",
    "median2_criterion",
    "median_criterion",
    "run_simulation",
    "train",
    "weighted_mean_criterion",
]
