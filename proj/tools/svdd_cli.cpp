// svdd: command-line front end for bandwidth selection, training, scoring,
// grid export, bandwidth search and the random-polygon study.
//
// Results go to stdout (key=value lines) or --out files; diagnostics go to
// stderr. Exit codes: 0 ok, 2 input/config, 3 degenerate bandwidth,
// 4 solver, 5 model file, 6 search failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "svdd/bandwidth.hpp"
#include "svdd/error.hpp"
#include "svdd/evaluation.hpp"
#include "svdd/io.hpp"
#include "svdd/polygon.hpp"
#include "svdd/random.hpp"
#include "svdd/scoring.hpp"
#include "svdd/solver.hpp"

namespace {

using svdd::Error;
using svdd::ErrorKind;
using svdd::io::format_double;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateData:
    case ErrorKind::LogDomain:
      return 3;
    case ErrorKind::Infeasible:
    case ErrorKind::NoBoundarySV:
    case ErrorKind::TooLarge:
      return 4;
    case ErrorKind::ModelFormat:
      return 5;
    case ErrorKind::AllFailed:
      return 6;
    default:
      return 2;
  }
}

svdd::io::HeaderMode header_mode(const std::string& s) {
  if (s == "yes") return svdd::io::HeaderMode::Yes;
  if (s == "no") return svdd::io::HeaderMode::No;
  return svdd::io::HeaderMode::Auto;
}

struct InputOptions {
  std::string header = "auto";
  std::string weights_col;
  std::string label_col;

  svdd::io::CsvOptions csv() const {
    svdd::io::CsvOptions o;
    o.header = header_mode(header);
    if (!weights_col.empty()) o.weights_col = weights_col;
    if (!label_col.empty()) o.label_col = label_col;
    return o;
  }
};

void add_header_option(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--header", in.header, "Header row: auto, yes or no")
      ->check(CLI::IsMember({"auto", "yes", "no"}));
}

svdd::Dataset load_training(const std::string& path, const InputOptions& in) {
  return svdd::validate_dataset(svdd::io::read_csv_file(path, in.csv()));
}

void emit(std::ostream& os, const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    os << contents;
  } else {
    svdd::io::write_file_atomic(path, contents);
  }
}

std::vector<std::size_t> parse_vertex_counts(const std::string& spec) {
  std::vector<std::size_t> out;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const std::size_t lo = std::stoul(spec.substr(0, dots));
    const std::size_t hi = std::stoul(spec.substr(dots + 2));
    if (lo > hi) throw Error(ErrorKind::BadParams, "vertex range '" + spec + "' is empty");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoul(item));
  return out;
}

std::vector<double> parse_reals(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw Error(ErrorKind::BadParams, "'" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

// bandwidth ----------------------------------------------------------------

struct BandwidthArgs {
  std::string input;
  std::string criterion = "mean";
  double delta = svdd::kDefaultDelta;
  std::optional<std::size_t> sample;
  std::optional<std::uint64_t> seed;
  InputOptions in;
};

int run_bandwidth(const BandwidthArgs& a) {
  const svdd::Dataset data = load_training(a.input, a.in);
  svdd::BandwidthConfig cfg;
  cfg.criterion = *svdd::parse_criterion(a.criterion);
  cfg.delta = a.delta;
  cfg.median_sample_size = a.sample;
  cfg.seed = a.seed;
  const double s = svdd::select_bandwidth(data, cfg);

  std::ostringstream line;
  line << "s=" << format_double(s) << " criterion=" << a.criterion << " n=" << data.size()
       << " p=" << data.dim() << " delta=" << format_double(a.delta);
  if (cfg.criterion == svdd::Criterion::Mean) {
    const double d2 = svdd::mean_sq_pairwise_closed_form(data);
    line << " mean_sq_dist=" << format_double(d2);
  } else {
    const double med = svdd::median_pairwise_distance(
        data, a.sample ? a.sample
                       : (data.size() > svdd::kExactMedianMaxRows
                              ? std::optional<std::size_t>(svdd::kDefaultMedianSample)
                              : std::nullopt),
        a.seed.value_or(0));
    line << " median_dist=" << format_double(med);
  }
  std::cout << line.str() << '\n';
  std::cerr << "bandwidth (" << a.criterion << ") for " << data.size() << " x " << data.dim()
            << " data: " << s << '\n';
  return 0;
}

// train --------------------------------------------------------------------

struct TrainArgs {
  std::string input;
  std::string out;
  double f = 0.001;
  std::string criterion = "mean";
  std::optional<double> bandwidth;
  double delta = svdd::kDefaultDelta;
  double tol = svdd::kDefaultKktTolerance;
  std::size_t max_iter = 0;
  std::optional<std::size_t> sample;
  std::optional<std::uint64_t> seed;
  InputOptions in;
};

int run_train(const TrainArgs& a) {
  const svdd::Dataset data = load_training(a.input, a.in);
  svdd::TrainConfig cfg;
  cfg.outlier_fraction = a.f;
  cfg.kkt_tolerance = a.tol;
  cfg.max_iterations = a.max_iter;
  cfg.bandwidth.delta = a.delta;
  cfg.bandwidth.median_sample_size = a.sample;
  cfg.bandwidth.seed = a.seed;
  if (a.bandwidth) {
    cfg.bandwidth.criterion = svdd::Criterion::Fixed;
    cfg.bandwidth.fixed_value = *a.bandwidth;
  } else {
    cfg.bandwidth.criterion = *svdd::parse_criterion(a.criterion);
  }
  const svdd::SvddModel model = svdd::train(data, cfg);
  svdd::io::save_model_file(model, a.out);

  std::cout << "s=" << format_double(model.bandwidth) << " C=" << format_double(model.penalty)
            << " R2=" << format_double(model.threshold) << " n_sv=" << model.n_support()
            << " n_boundary=" << model.count(svdd::Position::Boundary)
            << " n_outside=" << model.count(svdd::Position::Outside)
            << " converged=" << (model.provenance.converged ? 1 : 0)
            << " kkt_violation=" << format_double(model.provenance.kkt_violation) << '\n';
  if (!model.provenance.converged) {
    std::cerr << "warning: solver stopped after " << model.provenance.iterations
              << " iterations without reaching the KKT tolerance\n";
  }
  std::cerr << "model written to " << a.out << '\n';
  return 0;
}

// score --------------------------------------------------------------------

struct ScoreArgs {
  std::string model;
  std::string input;
  std::string out;
  InputOptions in;
};

int run_score(const ScoreArgs& a) {
  const svdd::SvddModel model = svdd::io::load_model_file(a.model);
  svdd::Dataset batch = svdd::io::read_csv_file(a.input, a.in.csv());
  if (batch.size() == 0 && batch.dim() != model.dim()) batch.points = svdd::Matrix(0, model.dim());
  const svdd::ScoreReport report = svdd::classify(model, batch);

  std::string csv = "index,dist2,outlier\n";
  for (std::size_t i = 0; i < report.size(); ++i) {
    csv += std::to_string(i) + ',' + format_double(report.dist2[i]) + ',' +
           (report.is_outlier[i] ? "1" : "0") + '\n';
  }
  emit(std::cout, a.out, csv);
  std::size_t outliers = 0;
  for (bool o : report.is_outlier) outliers += o ? 1 : 0;
  std::cerr << "scored " << report.size() << " rows, " << outliers << " outliers\n";
  return 0;
}

// grid ---------------------------------------------------------------------

struct GridArgs {
  std::string model;
  std::string out;
  std::size_t resolution = svdd::kDefaultGridResolution;
  std::string bounds = "auto";
};

int run_grid(const GridArgs& a) {
  const svdd::SvddModel model = svdd::io::load_model_file(a.model);
  svdd::GridSpec spec = svdd::default_grid(model, a.resolution);
  if (a.bounds != "auto") {
    const auto b = parse_reals(a.bounds);
    if (b.size() != 4) throw Error(ErrorKind::BadParams, "--bounds needs x0,x1,y0,y1");
    spec.x_min = b[0];
    spec.x_max = b[1];
    spec.y_min = b[2];
    spec.y_max = b[3];
  }
  const auto cells = svdd::score_grid(model, spec);
  std::string csv = "x,y,dist2,inlier\n";
  for (const auto& c : cells) {
    csv += format_double(c.x) + ',' + format_double(c.y) + ',' + format_double(c.dist2) + ',' +
           (c.inlier ? "1" : "0") + '\n';
  }
  emit(std::cout, a.out, csv);
  std::cerr << "grid " << spec.resolution << "x" << spec.resolution << " over [" << spec.x_min
            << ", " << spec.x_max << "] x [" << spec.y_min << ", " << spec.y_max << "]\n";
  return 0;
}

// crossval -----------------------------------------------------------------

struct CrossvalArgs {
  std::string train;
  std::string eval;
  std::string label_col;
  std::string grid = "auto";
  std::string positive = "inlier";
  std::string out;
  double f = 0.001;
  double delta = svdd::kDefaultDelta;
  std::string header = "auto";
};

int run_crossval(const CrossvalArgs& a) {
  svdd::io::CsvOptions train_opts;
  train_opts.header = header_mode(a.header);
  const svdd::Dataset train = svdd::validate_dataset(svdd::io::read_csv_file(a.train, train_opts));
  svdd::io::CsvOptions eval_opts = train_opts;
  eval_opts.label_col = a.label_col;
  const svdd::Dataset eval = svdd::io::read_csv_file(a.eval, eval_opts);

  const std::vector<double> grid =
      a.grid == "auto" ? svdd::default_bandwidth_grid(train, a.delta) : parse_reals(a.grid);
  svdd::TrainConfig cfg;
  cfg.outlier_fraction = a.f;
  cfg.bandwidth.delta = a.delta;
  const auto positive =
      a.positive == "outlier" ? svdd::PositiveClass::Outlier : svdd::PositiveClass::Inlier;
  const auto result = svdd::bandwidth_grid_search(train, eval, grid, cfg, positive);

  std::string csv = "s,f1\n";
  for (const auto& [s, f1] : result.grid) csv += format_double(s) + ',' + format_double(f1) + '\n';
  if (a.out.empty()) {
    std::cerr << csv;
  } else {
    svdd::io::write_file_atomic(a.out, csv);
  }
  std::cout << "best_s=" << format_double(result.best_s)
            << " best_f1=" << format_double(result.best_f1) << " grid_size=" << result.grid.size()
            << " failures=" << result.failures << '\n';
  return 0;
}

// simulate -----------------------------------------------------------------

struct SimulateArgs {
  std::string vertices = "5..30";
  std::size_t per_count = 20;
  std::size_t n_sample = 600;
  double f = 0.001;
  std::uint64_t seed = 0;
  std::size_t grid_size = 30;
  std::size_t resolution = svdd::kDefaultGridResolution;
  double r_min = 3.0;
  double r_max = 5.0;
  std::string out = "simulation.csv";
  std::string aggregate_out;
};

std::string aggregate_path(const SimulateArgs& a) {
  if (!a.aggregate_out.empty()) return a.aggregate_out;
  std::string base = a.out;
  if (base.size() > 4 && base.substr(base.size() - 4) == ".csv") base.resize(base.size() - 4);
  return base + "_aggregate.csv";
}

int run_simulate(const SimulateArgs& a) {
  svdd::SimulationParams params;
  params.vertex_counts = parse_vertex_counts(a.vertices);
  params.polygons_per_count = a.per_count;
  params.n_sample = a.n_sample;
  params.outlier_fraction = a.f;
  params.seed = a.seed;
  params.s_grid_size = a.grid_size;
  params.resolution = a.resolution;
  params.r_min = a.r_min;
  params.r_max = a.r_max;
  const svdd::SimulationReport report = svdd::run_simulation(params);

  std::string csv =
      "n_vertices,seed,s_mean,s_median,s_max,f_mean,f_median,f_max,ratio_mean,ratio_median\n";
  for (const auto& r : report.polygons) {
    csv += std::to_string(r.n_vertices) + ',' + std::to_string(r.seed);
    if (r.failed) {
      csv += ",nan,nan,nan,nan,nan,nan,nan,nan\n";
      std::cerr << "polygon seed " << r.seed << " excluded: " << r.error << '\n';
      continue;
    }
    for (double v : {r.s_mean, r.s_median, r.s_max, r.f_mean, r.f_median, r.f_max, r.ratio_mean,
                     r.ratio_median}) {
      csv += ',' + format_double(v);
    }
    csv += '\n';
  }
  svdd::io::write_file_atomic(a.out, csv);

  std::string agg = "n_vertices,criterion,n_polygons,excluded,min,q1,median,q3,max,mean\n";
  for (const auto& g : report.aggregates) {
    for (const auto& [name, sum] : {std::pair{"mean", g.ratio_mean}, std::pair{"median", g.ratio_median}}) {
      agg += std::to_string(g.n_vertices) + ',' + name + ',' + std::to_string(g.n_polygons) + ',' +
             std::to_string(g.excluded);
      for (double v : {sum.min, sum.q1, sum.median, sum.q3, sum.max, sum.mean}) {
        agg += ',' + (g.n_polygons > 0 ? format_double(v) : std::string("nan"));
      }
      agg += '\n';
    }
  }
  const std::string agg_path = aggregate_path(a);
  svdd::io::write_file_atomic(agg_path, agg);

  std::cerr << "vertices  criterion  min     q1      median  q3      max\n";
  for (const auto& g : report.aggregates) {
    if (g.n_polygons == 0) continue;
    for (const auto& [name, sum] : {std::pair{"mean  ", g.ratio_mean}, std::pair{"median", g.ratio_median}}) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%8zu  %s     %.4f  %.4f  %.4f  %.4f  %.4f\n", g.n_vertices,
                    name, sum.min, sum.q1, sum.median, sum.q3, sum.max);
      std::cerr << buf;
    }
  }
  std::size_t excluded = 0;
  for (const auto& g : report.aggregates) excluded += g.excluded;
  std::cout << "polygons=" << report.polygons.size() << " excluded=" << excluded
            << " rng=" << svdd::Rng::kAlgorithm << " seed=" << a.seed << " report=" << a.out
            << " aggregate=" << agg_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Support vector data description with automatic Gaussian bandwidth selection"};
  app.require_subcommand(1);

  BandwidthArgs bw;
  auto* bw_cmd = app.add_subcommand("bandwidth", "Compute the Gaussian bandwidth of a CSV dataset");
  bw_cmd->add_option("input", bw.input, "Input CSV")->required();
  bw_cmd->add_option("--criterion", bw.criterion, "mean, median or median2")
      ->check(CLI::IsMember({"mean", "median", "median2"}));
  bw_cmd->add_option("--delta", bw.delta, "Tolerance factor in (0, 1)");
  bw_cmd->add_option("--weights-col", bw.in.weights_col, "Repeat-count column (name or index)");
  bw_cmd->add_option("--sample", bw.sample, "Subsample size for the median");
  bw_cmd->add_option("--seed", bw.seed, "Seed for subsampling");
  add_header_option(bw_cmd, bw.in);

  TrainArgs tr;
  auto* tr_cmd = app.add_subcommand("train", "Train a model and write it to a model file");
  tr_cmd->add_option("input", tr.input, "Training CSV")->required();
  tr_cmd->add_option("--out", tr.out, "Model file")->required();
  tr_cmd->add_option("--f", tr.f, "Expected outlier fraction in (0, 1]");
  auto* crit_opt = tr_cmd->add_option("--criterion", tr.criterion, "mean, median or median2")
                       ->check(CLI::IsMember({"mean", "median", "median2"}));
  tr_cmd->add_option("--bandwidth", tr.bandwidth, "Fixed bandwidth s")->excludes(crit_opt);
  tr_cmd->add_option("--delta", tr.delta, "Tolerance factor in (0, 1)");
  tr_cmd->add_option("--tol", tr.tol, "KKT tolerance");
  tr_cmd->add_option("--max-iter", tr.max_iter, "Iteration limit (default max(100 N, 100000))");
  tr_cmd->add_option("--weights-col", tr.in.weights_col, "Repeat-count column for the bandwidth");
  tr_cmd->add_option("--sample", tr.sample, "Subsample size for the median");
  tr_cmd->add_option("--seed", tr.seed, "Seed for subsampling");
  add_header_option(tr_cmd, tr.in);

  ScoreArgs sc;
  auto* sc_cmd = app.add_subcommand("score", "Score a CSV with a trained model");
  sc_cmd->add_option("model", sc.model, "Model file")->required();
  sc_cmd->add_option("input", sc.input, "CSV to score")->required();
  sc_cmd->add_option("--out", sc.out, "Output CSV (default stdout)");
  add_header_option(sc_cmd, sc.in);

  GridArgs gr;
  auto* gr_cmd = app.add_subcommand("grid", "Score a regular grid for a 2-D model");
  gr_cmd->add_option("model", gr.model, "Model file")->required();
  gr_cmd->add_option("--resolution", gr.resolution, "Cells per axis")->check(CLI::Range(2, 100000));
  gr_cmd->add_option("--bounds", gr.bounds, "auto or x0,x1,y0,y1");
  gr_cmd->add_option("--out", gr.out, "Output CSV (default stdout)");

  CrossvalArgs cv;
  auto* cv_cmd = app.add_subcommand("crossval", "Pick the bandwidth with the best F1 on labeled data");
  cv_cmd->add_option("train", cv.train, "Training CSV")->required();
  cv_cmd->add_option("eval", cv.eval, "Labeled evaluation CSV")->required();
  cv_cmd->add_option("--label-col", cv.label_col, "Label column (name or index)")->required();
  cv_cmd->add_option("--grid", cv.grid, "auto or comma-separated bandwidths");
  cv_cmd->add_option("--f", cv.f, "Expected outlier fraction in (0, 1]");
  cv_cmd->add_option("--delta", cv.delta, "Tolerance factor for the auto grid");
  cv_cmd->add_option("--positive", cv.positive, "Positive class for F1")
      ->check(CLI::IsMember({"inlier", "outlier"}));
  cv_cmd->add_option("--out", cv.out, "Trace CSV (default stderr)");
  cv_cmd->add_option("--header", cv.header, "Header row: auto, yes or no")
      ->check(CLI::IsMember({"auto", "yes", "no"}));

  SimulateArgs sm;
  auto* sm_cmd = app.add_subcommand("simulate", "Random-polygon bandwidth study");
  sm_cmd->add_option("--vertices", sm.vertices, "Range lo..hi or comma list");
  sm_cmd->add_option("--per-count", sm.per_count, "Polygons per vertex count");
  sm_cmd->add_option("--n-sample", sm.n_sample, "Interior points per polygon");
  sm_cmd->add_option("--f", sm.f, "Expected outlier fraction in (0, 1]");
  sm_cmd->add_option("--seed", sm.seed, "Master seed");
  sm_cmd->add_option("--grid-size", sm.grid_size, "Log-spaced bandwidths searched for F_max");
  sm_cmd->add_option("--resolution", sm.resolution, "Label grid cells per axis");
  sm_cmd->add_option("--rmin", sm.r_min, "Smallest vertex radius");
  sm_cmd->add_option("--rmax", sm.r_max, "Largest vertex radius");
  sm_cmd->add_option("--out", sm.out, "Per-polygon CSV");
  sm_cmd->add_option("--aggregate-out", sm.aggregate_out, "Per-vertex-count quartile CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bw_cmd->parsed()) return run_bandwidth(bw);
    if (tr_cmd->parsed()) return run_train(tr);
    if (sc_cmd->parsed()) return run_score(sc);
    if (gr_cmd->parsed()) return run_grid(gr);
    if (cv_cmd->parsed()) return run_crossval(cv);
    if (sm_cmd->parsed()) return run_simulate(sm);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
