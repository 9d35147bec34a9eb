#include <doctest.h>

#include <cmath>

#include "svdd/bandwidth.hpp"
#include "svdd/error.hpp"
#include "svdd/random.hpp"
#include "svdd/scoring.hpp"
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

double fraction_inlier(const ScoreReport& r) {
  std::size_t in = 0;
  for (bool o : r.is_outlier) in += o ? 0 : 1;
  return static_cast<double>(in) / static_cast<double>(r.size());
}

}  // namespace

TEST_CASE("distance2 on the two-point model") {
  const SvddModel m = two_point_model();
  const double at_sv[2] = {0.0, 0.0};
  CHECK(std::abs(distance2(m, at_sv) - m.threshold) <= 10 * kDefaultKktTolerance);

  // Far away every kernel term vanishes: 1 + sv_self_term = 1.8032653298563166.
  const double far[2] = {1e3, -1e3};
  CHECK(distance2(m, far) == doctest::Approx(1.8032653298563166).epsilon(1e-9));
  CHECK(distance2(m, far) > m.threshold);

  // Midpoint: 1 - 2 exp(-0.125) + 0.80327 = 0.0382715246871258.
  const double mid[2] = {0.5, 0.0};
  CHECK(distance2(m, mid) == doctest::Approx(0.0382715246871258).epsilon(1e-9));

  const double wrong[3] = {0, 0, 0};
  CHECK_THROWS_AS(distance2(m, wrong), Error);
}

TEST_CASE("classify") {
  const SvddModel m = two_point_model();
  SUBCASE("support vectors tie with R^2 and count as inliers") {
    const ScoreReport r = classify(m, Dataset::from_rows({{0.0, 0.0}, {1.0, 0.0}}));
    CHECK_FALSE(r.is_outlier[0]);
    CHECK_FALSE(r.is_outlier[1]);
  }
  SUBCASE("far point is an outlier") {
    const ScoreReport r = classify(m, Dataset::from_rows({{50.0, 50.0}}));
    CHECK(r.is_outlier[0]);
  }
  SUBCASE("empty batch") {
    const ScoreReport r = classify(m, Dataset(Matrix(0, 2)));
    CHECK(r.size() == 0);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(classify(m, Dataset::from_rows({{1.0, 2.0, 3.0}})), Error);
  }
  SUBCASE("flag is exactly dist2 > R^2") {
    const Dataset batch = synthetic::uniform_cloud(200, 2, -1, 2, 4);
    const ScoreReport r = classify(m, batch);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r.is_outlier[i] == (r.dist2[i] > m.threshold));
  }
}

TEST_CASE("score_grid") {
  SUBCASE("shape and ordering") {
    const Dataset d = synthetic::uniform_cloud(30, 2, 0, 1, 8);
    TrainConfig cfg;
    const SvddModel m = train(d, cfg);
    GridSpec spec{0.0, 1.0, 0.0, 1.0, 2};
    const auto cells = score_grid(m, spec);
    REQUIRE(cells.size() == 4);
    CHECK(cells[0].x == 0.25);
    CHECK(cells[0].y == 0.25);
    CHECK(cells[1].x == 0.75);
    CHECK(cells[1].y == 0.25);
    CHECK(cells[2].y == 0.75);
    for (const auto& c : cells) CHECK(std::isfinite(c.dist2));

    const auto big = score_grid(m, default_grid(m));
    CHECK(big.size() == 40000);
  }
  SUBCASE("cells on the support vectors are inliers") {
    const SvddModel m = two_point_model();
    // Centers at x in {0, 1, 2}, y in {-1, 0, 1}.
    const auto cells = score_grid(m, GridSpec{-0.5, 2.5, -1.5, 1.5, 3});
    CHECK(cells[3].x == 0.0);
    CHECK(cells[3].y == 0.0);
    CHECK(cells[3].inlier);
    CHECK(cells[4].x == 1.0);
    CHECK(cells[4].inlier);
  }
  SUBCASE("auto bounds are the data box grown by 10 percent") {
    const SvddModel m = two_point_model();
    const GridSpec g = default_grid(m);
    CHECK(g.x_min == doctest::Approx(-0.1));
    CHECK(g.x_max == doctest::Approx(1.1));
    CHECK(g.resolution == 200);
  }
  SUBCASE("errors") {
    TrainConfig cfg;
    const SvddModel m3 = train(synthetic::uniform_cloud(20, 3, 0, 1, 1), cfg);
    CHECK_THROWS_AS(score_grid(m3, GridSpec{}), Error);
    const SvddModel m = two_point_model();
    CHECK_THROWS_AS(score_grid(m, GridSpec{0, 1, 0, 1, 1}), Error);
    CHECK_THROWS_AS(score_grid(m, GridSpec{1, 0, 0, 1, 4}), Error);
  }
}

TEST_CASE("dist2 stays within [0, 1 + self term]") {
  const Dataset d = synthetic::banana(150, 3);
  TrainConfig cfg;
  const SvddModel m = train(d, cfg);
  const Dataset probe = synthetic::uniform_cloud(2000, 2, -30, 30, 9);
  const ScoreReport r = classify(m, probe);
  for (double v : r.dist2) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + m.sv_self_term + 1e-12);
  }
}

TEST_CASE("dist2 is Lipschitz on a fine grid") {
  const Dataset d = synthetic::two_clusters(120, 6);
  TrainConfig cfg;
  const SvddModel m = train(d, cfg);
  GridSpec coarse = default_grid(m, 60);
  GridSpec fine = coarse;
  fine.resolution = 120;
  const auto c = score_grid(m, coarse);
  const auto f = score_grid(m, fine);
  auto max_step = [](const std::vector<GridCell>& g, std::size_t res) {
    double worst = 0.0;
    for (std::size_t iy = 0; iy < res; ++iy)
      for (std::size_t ix = 1; ix < res; ++ix)
        worst = std::max(worst, std::abs(g[iy * res + ix].dist2 - g[iy * res + ix - 1].dist2));
    return worst;
  };
  // Halving the step roughly halves the largest neighbour difference.
  CHECK(max_step(f, 120) <= max_step(c, 60) * 0.5 * 2.0 + 1e-12);
  // Analytic bound: |grad dist2| <= 2 sum a_i |grad K| <= 2 / (s sqrt(e)).
  const double lip = 2.0 / (m.bandwidth * std::sqrt(std::exp(1.0)));
  const double step = (fine.x_max - fine.x_min) / 120.0;
  CHECK(max_step(f, 120) <= lip * step + 1e-12);
}

TEST_CASE("far field along rays is eventually non-decreasing") {
  const Dataset d = synthetic::banana(100, 12);
  TrainConfig cfg;
  const SvddModel m = train(d, cfg);
  Rng rng(1);
  for (int ray = 0; ray < 16; ++ray) {
    const double theta = rng.uniform(0.0, 6.283185307179586);
    double prev = -1.0;
    for (int k = 0; k < 20; ++k) {
      const double r = 3 * 10.0 + k * 2.0;  // beyond 3 data diameters
      const double z[2] = {r * std::cos(theta), r * std::sin(theta)};
      const double v = distance2(m, z);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("inlier region tracks the generators") {
  for (auto criterion : {Criterion::Mean, Criterion::Median}) {
    for (int which = 0; which < 2; ++which) {
      const Dataset train_set = which == 0 ? synthetic::banana(1000, 1) : synthetic::two_clusters(1000, 1);
      const Dataset held_out = which == 0 ? synthetic::banana(1000, 2) : synthetic::two_clusters(1000, 2);
      TrainConfig cfg;
      cfg.bandwidth.criterion = criterion;
      const SvddModel m = train(train_set, cfg);
      CHECK(fraction_inlier(classify(m, held_out)) >= 0.9);
      const Dataset frame = synthetic::far_frame(train_set, 1000, 2.0, 3);
      CHECK(1.0 - fraction_inlier(classify(m, frame)) >= 0.9);
    }
  }
}
