#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "svdd/error.hpp"
#include "svdd/io.hpp"
#include "svdd/scoring.hpp"
#include "svdd/solver.hpp"
#include "svdd/synthetic.hpp"

using namespace svdd;

namespace {

Dataset parse(const std::string& text, const io::CsvOptions& opt = {}) {
  std::istringstream in(text);
  return io::read_csv(in, opt);
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an svdd::Error");
  return ErrorKind::Io;
}

std::string saved(const SvddModel& m) {
  std::ostringstream out;
  io::save_model(m, out);
  return out.str();
}

SvddModel reload(const std::string& text) {
  std::istringstream in(text);
  return io::load_model(in);
}

}  // namespace

TEST_CASE("read_csv: header detection") {
  const Dataset plain = parse("1,2\n3,4\n");
  CHECK(plain.size() == 2);
  CHECK(plain.points(1, 0) == 3.0);

  const Dataset named = parse("x,y\n1,2\n3,4\n");
  CHECK(named.size() == 2);

  const Dataset forced = parse("1,2\n3,4\n", {.header = io::HeaderMode::Yes});
  CHECK(forced.size() == 1);
  CHECK(forced.points(0, 0) == 3.0);

  CHECK(kind_of([] { parse("x,y\n1,2\n", {.header = io::HeaderMode::No}); }) == ErrorKind::Io);

  const Dataset only_header = parse("x,y\n");
  CHECK(only_header.size() == 0);
  CHECK(only_header.dim() == 2);
}

TEST_CASE("read_csv: values") {
  const Dataset d = parse("-1.5e-3, +2\r\n 0.1 ,7\n\n");
  CHECK(d.size() == 2);
  CHECK(d.points(0, 0) == -1.5e-3);
  CHECK(d.points(0, 1) == 2.0);
  CHECK(d.points(1, 0) == 0.1);

  const Dataset nan_row = parse("1,2\n3,nan\n");
  CHECK(std::isnan(nan_row.points(1, 1)));
  try {
    validate_dataset(nan_row);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }

  CHECK(kind_of([] { parse("1,2\n3\n"); }) == ErrorKind::RaggedRows);
  CHECK(kind_of([] { parse("1,2\n3,abc\n"); }) == ErrorKind::Io);
  CHECK(kind_of([] { parse(""); }) == ErrorKind::EmptyData);
}

TEST_CASE("read_csv: weights and labels") {
  const Dataset w = parse("x,y,w\n0,0,1\n1,0,3\n", {.weights_col = "w"});
  CHECK(w.dim() == 2);
  REQUIRE(w.weights.has_value());
  CHECK(*w.weights == std::vector<double>{1, 3});

  const Dataset by_index = parse("0,0,1\n1,0,3\n", {.weights_col = "2"});
  CHECK(*by_index.weights == std::vector<double>{1, 3});

  const Dataset l = parse("label,x\n1,0.5\n0,0.25\noutlier,1\ninlier,2\n", {.label_col = "label"});
  CHECK(l.dim() == 1);
  REQUIRE(l.labels.has_value());
  CHECK((*l.labels)[0] == Label::Outlier);
  CHECK((*l.labels)[1] == Label::Inlier);
  CHECK((*l.labels)[2] == Label::Outlier);
  CHECK((*l.labels)[3] == Label::Inlier);
  CHECK(l.points(0, 0) == 0.5);

  CHECK(kind_of([] { parse("x,label\n1,2\n", {.label_col = "label"}); }) == ErrorKind::Io);
  CHECK(kind_of([] { parse("x,y\n1,2\n", {.weights_col = "w"}); }) == ErrorKind::Io);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.19267188305209781}) {
    const std::string s = io::format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("model save/load is bit-exact") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset d = seed % 2 ? synthetic::banana(80, seed) : synthetic::two_clusters(80, seed);
    TrainConfig cfg;
    cfg.outlier_fraction = 0.05;
    cfg.bandwidth.criterion = seed % 3 == 0 ? Criterion::Median : Criterion::Mean;
    const SvddModel m = train(d, cfg);
    const SvddModel back = reload(saved(m));
    CHECK(back.bandwidth == m.bandwidth);
    CHECK(back.penalty == m.penalty);
    CHECK(back.threshold == m.threshold);
    CHECK(back.sv_self_term == m.sv_self_term);
    CHECK(back.alphas == m.alphas);
    CHECK(back.support_vectors == m.support_vectors);
    CHECK(back.provenance.criterion == m.provenance.criterion);
    CHECK(back.provenance.data_min == m.provenance.data_min);
    CHECK(back.provenance.iterations == m.provenance.iterations);

    const Dataset probe = synthetic::uniform_cloud(300, 2, -8, 8, 100 + seed);
    const ScoreReport a = classify(m, probe);
    const ScoreReport b = classify(back, probe);
    CHECK(a.dist2 == b.dist2);
    CHECK(a.is_outlier == b.is_outlier);
    CHECK(saved(back) == saved(m));
  }
}

TEST_CASE("model files") {
  const auto dir = std::filesystem::temp_directory_path() / "svdd_test_io";
  std::filesystem::create_directories(dir);
  const SvddModel m = train(synthetic::two_clusters(40, 1), TrainConfig{});
  const auto path = dir / "model.txt";
  io::save_model_file(m, path);
  CHECK_FALSE(std::filesystem::exists(dir / "model.txt.tmp"));
  CHECK(io::load_model_file(path).threshold == m.threshold);
  CHECK(kind_of([&] { io::load_model_file(dir / "missing.txt"); }) == ErrorKind::ModelFormat);
  std::filesystem::remove_all(dir);
}

TEST_CASE("corrupt models are rejected") {
  const SvddModel m = train(synthetic::two_clusters(40, 2), TrainConfig{});
  const std::string good = saved(m);

  SUBCASE("truncated table") {
    const std::string cut = good.substr(0, good.find("support_vectors") + 20);
    CHECK(kind_of([&] { reload(cut); }) == ErrorKind::ModelFormat);
  }
  SUBCASE("missing end marker") {
    const std::string no_end = good.substr(0, good.rfind("end"));
    CHECK(kind_of([&] { reload(no_end); }) == ErrorKind::ModelFormat);
  }
  SUBCASE("header cut before the table") {
    CHECK(kind_of([&] { reload(good.substr(0, 60)); }) == ErrorKind::ModelFormat);
  }
  SUBCASE("unknown version") {
    std::string v2 = good;
    v2.replace(v2.find("format_version 1"), 16, "format_version 2");
    CHECK(kind_of([&] { reload(v2); }) == ErrorKind::ModelFormat);
  }
  SUBCASE("not a model") {
    CHECK(kind_of([] { reload("hello\n"); }) == ErrorKind::ModelFormat);
    CHECK(kind_of([] { reload(""); }) == ErrorKind::ModelFormat);
  }
}
