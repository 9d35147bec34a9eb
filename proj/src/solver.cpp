#include "svdd/solver.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "svdd/bandwidth.hpp"
#include "svdd/error.hpp"
#include "svdd/parallel.hpp"
#include "svdd/scoring.hpp"

namespace svdd {
namespace {

constexpr double kFlatCurvature = 1e-12;

void check_bandwidth(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorKind::BadBandwidth, "bandwidth must be positive and finite, got " +
                                             std::to_string(s));
  }
}

void full_gradient(const Matrix& kernel, std::span<const double> alphas, std::vector<double>& grad) {
  const std::size_t n = kernel.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = kernel.row(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += row[k] * alphas[k];
    grad[i] = 2.0 * acc;
  }
}

struct WorkingPair {
  std::size_t up = 0;    // coordinate that gains mass (alpha < C, smallest gradient)
  std::size_t down = 0;  // coordinate that loses mass (alpha > 0, largest gradient)
  double gap = 0.0;
  bool found = false;
};

WorkingPair select_pair(std::span<const double> alphas, std::span<const double> grad,
                        double penalty) {
  WorkingPair pair;
  double g_up = std::numeric_limits<double>::infinity();
  double g_down = -std::numeric_limits<double>::infinity();
  bool have_up = false;
  bool have_down = false;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (alphas[k] < penalty && grad[k] < g_up) {
      g_up = grad[k];
      pair.up = k;
      have_up = true;
    }
    if (alphas[k] > 0.0 && grad[k] > g_down) {
      g_down = grad[k];
      pair.down = k;
      have_down = true;
    }
  }
  pair.found = have_up && have_down;
  pair.gap = pair.found ? std::max(0.0, g_down - g_up) : 0.0;
  return pair;
}

// Keeps the most violating `up` index and picks the partner with the largest
// guaranteed decrease (g_k - g_up)^2 / eta. Same stopping gap, far fewer
// iterations on badly conditioned kernels.
std::size_t second_order_down(const Matrix& kernel, std::span<const double> alphas,
                              std::span<const double> grad, std::size_t up, std::size_t fallback) {
  const auto ku = kernel.row(up);
  const double g_up = grad[up];
  std::size_t best = fallback;
  double best_gain = -1.0;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k] > 0.0) || !(grad[k] > g_up)) continue;
    const double diff = grad[k] - g_up;
    const double eta = std::max(ku[up] + kernel(k, k) - 2.0 * ku[k], kFlatCurvature);
    const double gain = diff * diff / eta;
    if (gain > best_gain) {
      best_gain = gain;
      best = k;
    }
  }
  return best;
}

double quadratic_form(const Matrix& kernel, std::span<const double> alphas) {
  const std::size_t n = kernel.rows();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alphas[i] == 0.0) continue;
    const auto row = kernel.row(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += row[k] * alphas[k];
    total += alphas[i] * acc;
  }
  return total;
}

}  // namespace

Matrix kernel_matrix(const Dataset& data, double s) {
  check_bandwidth(s);
  check_dataset(data);
  const std::size_t n = data.size();
  if (n > kMaxDenseRows) {
    throw Error(ErrorKind::TooLarge, std::to_string(n) + " rows exceed the dense kernel limit of " +
                                         std::to_string(kMaxDenseRows));
  }
  Matrix k(n, n);
  parallel_for(n, [&](std::size_t i) {
    k(i, i) = 1.0;
    const auto xi = data.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      k(i, j) = gaussian_kernel(squared_distance(xi, data.row(j)), s);
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) k(i, j) = k(j, i);
  }
  return k;
}

double kkt_violation(const Matrix& kernel, std::span<const double> alphas, double penalty) {
  std::vector<double> grad(kernel.rows());
  full_gradient(kernel, alphas, grad);
  return select_pair(alphas, grad, penalty).gap;
}

DualSolution solve_dual(const Matrix& kernel, double penalty, double tol, std::size_t max_iter,
                        const IterationObserver& observer) {
  const std::size_t n = kernel.rows();
  if (n == 0 || kernel.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "kernel matrix must be square and non-empty");
  }
  if (!(penalty > 0.0) || static_cast<double>(n) * penalty < 1.0 - 1e-12) {
    throw Error(ErrorKind::Infeasible, "N*C = " + std::to_string(static_cast<double>(n) * penalty) +
                                           " < 1; sum(alpha) = 1 cannot be met");
  }

  DualSolution sol;
  sol.alphas.assign(n, std::min(1.0 / static_cast<double>(n), penalty));
  std::vector<double> grad(n);
  full_gradient(kernel, sol.alphas, grad);

  std::size_t iter = 0;
  while (true) {
    WorkingPair pair = select_pair(sol.alphas, grad, penalty);
    if (!pair.found || pair.gap <= tol) {
      // Confirm on a freshly computed gradient to rule out accumulated drift.
      full_gradient(kernel, sol.alphas, grad);
      pair = select_pair(sol.alphas, grad, penalty);
      if (!pair.found || pair.gap <= tol) {
        sol.converged = true;
        sol.kkt_violation = pair.gap;
        break;
      }
    }
    if (iter >= max_iter) {
      sol.kkt_violation = pair.gap;
      break;
    }

    const std::size_t i = pair.up;
    const std::size_t j = second_order_down(kernel, sol.alphas, grad, pair.up, pair.down);
    double& ai = sol.alphas[i];
    double& aj = sol.alphas[j];
    const double room = std::min(penalty - ai, aj);
    const double curvature = kernel(i, i) + kernel(j, j) - 2.0 * kernel(i, j);
    double step = room;
    if (curvature >= kFlatCurvature) {
      step = std::min(room, (grad[j] - grad[i]) / (2.0 * curvature));
    }
    if (step <= 0.0) {
      // Numerically stuck pair; nothing more to gain.
      sol.kkt_violation = pair.gap;
      sol.converged = pair.gap <= tol;
      break;
    }
    if (step == room) {
      if (penalty - ai <= aj) {
        aj -= penalty - ai;
        ai = penalty;
      } else {
        ai += aj;
        aj = 0.0;
      }
    } else {
      ai += step;
      aj -= step;
    }

    const auto ki = kernel.row(i);
    const auto kj = kernel.row(j);
    const double scale = 2.0 * step;
    for (std::size_t k = 0; k < n; ++k) grad[k] += scale * (ki[k] - kj[k]);

    ++iter;
    if (observer) observer(iter, sol.alphas);
  }

  sol.iterations = iter;
  sol.objective = 1.0 - quadratic_form(kernel, sol.alphas);
  return sol;
}

double threshold_at(const SvddModel& model, std::span<const double> x) {
  return distance2(model, x);
}

SvddModel train_with_bandwidth(const Dataset& data, double s, const TrainConfig& config,
                               Criterion criterion) {
  config.check();
  check_dataset(data);
  check_bandwidth(s);
  const std::size_t n = data.size();
  const std::size_t p = data.dim();
  const double tol = config.kkt_tolerance;
  const double penalty = 1.0 / (static_cast<double>(n) * config.outlier_fraction);

  const Matrix kernel = kernel_matrix(data, s);
  const DualSolution sol = solve_dual(kernel, penalty, tol, config.iteration_limit(n));

  SvddModel model;
  model.bandwidth = s;
  model.penalty = penalty;
  model.position_tags.resize(n);
  model.support_vectors = Matrix(0, p);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = sol.alphas[i];
    if (a <= tol) {
      model.position_tags[i] = Position::Inside;
      continue;
    }
    model.position_tags[i] = a > penalty - tol ? Position::Outside : Position::Boundary;
    model.support_vectors.append_row(data.row(i));
    model.alphas.push_back(a);
    model.sv_indices.push_back(i);
  }

  const std::size_t m = model.alphas.size();
  double self = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    const auto row = kernel.row(model.sv_indices[a]);
    double acc = 0.0;
    for (std::size_t b = 0; b < m; ++b) acc += model.alphas[b] * row[model.sv_indices[b]];
    self += model.alphas[a] * acc;
  }
  model.sv_self_term = self;

  double boundary_sum = 0.0;
  std::size_t boundary_count = 0;
  double inside_max = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (model.position_tags[i] == Position::Outside) continue;
    const double d2 = distance2(model, data.row(i));
    if (model.position_tags[i] == Position::Boundary) {
      boundary_sum += d2;
      ++boundary_count;
    } else {
      inside_max = std::max(inside_max, d2);
    }
  }
  if (boundary_count > 0) {
    model.threshold = boundary_sum / static_cast<double>(boundary_count);
  } else if (inside_max >= 0.0) {
    model.threshold = inside_max;
  } else {
    throw Error(ErrorKind::NoBoundarySV,
                "every training point is outside the description (outlier fraction too large)");
  }

  auto& prov = model.provenance;
  prov.criterion = criterion;
  prov.delta = config.bandwidth.delta;
  prov.outlier_fraction = config.outlier_fraction;
  prov.n_train = n;
  prov.converged = sol.converged;
  prov.kkt_violation = sol.kkt_violation;
  prov.iterations = sol.iterations;
  prov.data_min.assign(p, std::numeric_limits<double>::infinity());
  prov.data_max.assign(p, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = data.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      prov.data_min[j] = std::min(prov.data_min[j], x[j]);
      prov.data_max[j] = std::max(prov.data_max[j], x[j]);
    }
  }
  return model;
}

SvddModel train(const Dataset& data, const TrainConfig& config) {
  config.check();
  check_dataset(data);
  const double s = select_bandwidth(data, config.bandwidth);
  return train_with_bandwidth(data, s, config, config.bandwidth.criterion);
}

}  // namespace svdd
