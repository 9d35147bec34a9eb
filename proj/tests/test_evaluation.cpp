#include <doctest.h>

#include <cmath>

#include "svdd/bandwidth.hpp"
#include "svdd/error.hpp"
#include "svdd/evaluation.hpp"
#include "svdd/random.hpp"
#include "svdd/solver.hpp"
#include "svdd/synthetic.hpp"

using namespace svdd;

namespace {

SvddModel two_point_model() {
  TrainConfig cfg;
  cfg.outlier_fraction = 0.5;
  cfg.bandwidth.criterion = Criterion::Fixed;
  cfg.bandwidth.fixed_value = 1.0;
  return train(Dataset::from_rows({{0.0, 0.0}, {1.0, 0.0}}), cfg);
}

SvddModel everything_inlier_model() {
  TrainConfig cfg;
  cfg.bandwidth.criterion = Criterion::Fixed;
  cfg.bandwidth.fixed_value = 1e4;
  return train(Dataset::from_rows({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}), cfg);
}

}  // namespace

TEST_CASE("f1_score") {
  CHECK(f1_score({5, 0, 0, 0}) == 1.0);
  CHECK(f1_score({.tp = 2, .fp = 1, .fn = 1}) == doctest::Approx(4.0 / 6.0));
  CHECK(f1_score({}) == 0.0);
}

TEST_CASE("f1_score is symmetric in fn/fp and increasing in tp") {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const std::size_t tp = rng.below(50), fp = rng.below(50), fn = rng.below(50);
    CHECK(f1_score({tp, fp, fn, 0}) == f1_score({tp, fn, fp, 0}));
    if (fp + fn > 0) CHECK(f1_score({tp + 1, fp, fn, 0}) > f1_score({tp, fp, fn, 0}));
  }
}

TEST_CASE("evaluate_model") {
  SUBCASE("all inlier predictions on all-inlier labels") {
    const SvddModel m = everything_inlier_model();
    Dataset batch = Dataset::from_rows({{0.1, 0.1}, {0.5, 0.5}});
    batch.labels = std::vector<Label>{Label::Inlier, Label::Inlier};
    const Evaluation ev = evaluate_model(m, batch, PositiveClass::Inlier);
    CHECK(ev.f1 == 1.0);
    CHECK(ev.counts.total() == 2);
  }
  SUBCASE("all inlier predictions, outliers positive") {
    const SvddModel m = everything_inlier_model();
    Dataset batch = Dataset::from_rows({{0.1, 0.1}, {0.5, 0.5}});
    batch.labels = std::vector<Label>{Label::Outlier, Label::Outlier};
    const Evaluation ev = evaluate_model(m, batch, PositiveClass::Outlier);
    CHECK(ev.counts.tp == 0);
    CHECK(ev.f1 == 0.0);
  }
  SUBCASE("two-point model") {
    const SvddModel m = two_point_model();
    Dataset batch = Dataset::from_rows({{0.0, 0.0}, {40.0, 0.0}});
    batch.labels = std::vector<Label>{Label::Inlier, Label::Outlier};
    const Evaluation ev = evaluate_model(m, batch, PositiveClass::Inlier);
    CHECK(ev.counts.tp == 1);
    CHECK(ev.counts.fp == 0);
    CHECK(ev.counts.fn == 0);
    CHECK(ev.counts.tn == 1);
    CHECK(ev.f1 == 1.0);
  }
  SUBCASE("errors") {
    const SvddModel m = two_point_model();
    CHECK_THROWS_AS(evaluate_model(m, Dataset::from_rows({{0.0, 0.0}})), Error);
    Dataset wrong = Dataset::from_rows({{0.0}});
    wrong.labels = std::vector<Label>{Label::Inlier};
    CHECK_THROWS_AS(evaluate_model(m, wrong), Error);
  }
}

TEST_CASE("log_spaced and default grid") {
  const auto g = log_spaced(0.1, 10.0, 3);
  CHECK(g[0] == 0.1);
  CHECK(g[1] == doctest::Approx(1.0));
  CHECK(g[2] == 10.0);

  const Dataset d = synthetic::two_clusters(60, 2);
  const auto grid = default_bandwidth_grid(d);
  const double s = mean_criterion(d);
  CHECK(grid.size() == 21);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::find(grid.begin(), grid.end(), s) != grid.end());
  CHECK(grid.front() == doctest::Approx(s / 10));
  CHECK(grid.back() == doctest::Approx(s * 10));
}

TEST_CASE("bandwidth_grid_search") {
  const Dataset train_set = synthetic::two_clusters(200, 10);
  const Dataset eval = synthetic::two_clusters_labeled(400, 400, 11);
  TrainConfig cfg;
  const double s_star = mean_criterion(train_set);

  SUBCASE("huge bandwidth underfits") {
    const std::vector<double> grid = {s_star, 1000 * s_star};
    const auto r = bandwidth_grid_search(train_set, eval, grid, cfg);
    CHECK(r.best_s == s_star);
    CHECK(r.grid[0].second > r.grid[1].second);
  }
  SUBCASE("single element") {
    const std::vector<double> grid = {0.7};
    const auto r = bandwidth_grid_search(train_set, eval, grid, cfg);
    CHECK(r.best_s == 0.7);
    CHECK(r.grid.size() == 1);
  }
  SUBCASE("ties go to the smaller bandwidth") {
    const std::vector<double> grid = {2.0 * s_star, s_star, 2.0 * s_star};
    const auto r = bandwidth_grid_search(train_set, eval, grid, cfg);
    if (r.grid[0].second == r.grid[1].second) CHECK(r.best_s == s_star);
    CHECK(r.grid[0].second == r.grid[2].second);
  }
  SUBCASE("best f1 dominates the trace and is reproducible") {
    const auto grid = default_bandwidth_grid(train_set);
    const auto a = bandwidth_grid_search(train_set, eval, grid, cfg);
    const auto b = bandwidth_grid_search(train_set, eval, grid, cfg);
    CHECK(a.grid == b.grid);
    for (const auto& [s, f1] : a.grid) {
      CHECK(a.best_f1 >= f1);
      if (f1 == a.best_f1) CHECK(a.best_s <= s);
    }
    // Independent re-evaluation of the winner.
    const SvddModel m = train_with_bandwidth(train_set, a.best_s, cfg);
    CHECK(evaluate_model(m, eval).f1 == a.best_f1);
  }
  SUBCASE("failed grid points are recorded and excluded") {
    TrainConfig all_outside = cfg;
    all_outside.outlier_fraction = 1.0;  // every training point pinned at C
    const std::vector<double> grid = {1.0, 2.0};
    try {
      bandwidth_grid_search(train_set, eval, grid, all_outside);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::AllFailed);
    }
  }
  SUBCASE("bad input") {
    const std::vector<double> empty;
    CHECK_THROWS_AS(bandwidth_grid_search(train_set, eval, empty, cfg), Error);
    const std::vector<double> neg = {-1.0};
    CHECK_THROWS_AS(bandwidth_grid_search(train_set, eval, neg, cfg), Error);
    const std::vector<double> ok = {1.0};
    CHECK_THROWS_AS(bandwidth_grid_search(train_set, train_set, ok, cfg), Error);
  }
}
