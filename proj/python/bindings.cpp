#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
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

namespace py = pybind11;
using namespace py::literals;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

svdd::Matrix to_matrix(const Array& a) {
  if (a.ndim() == 1) {
    svdd::Matrix m(static_cast<std::size_t>(a.shape(0)), 1);
    std::copy(a.data(), a.data() + a.size(), m.values().begin());
    return m;
  }
  if (a.ndim() != 2) throw svdd::Error(svdd::ErrorKind::BadParams, "expected a 1-D or 2-D array");
  svdd::Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.values().begin());
  return m;
}

svdd::Dataset to_dataset(const Array& x, const std::optional<std::vector<double>>& weights = {}) {
  svdd::Dataset d(to_matrix(x));
  if (weights) d.weights = *weights;
  return d;
}

py::array_t<double> from_matrix(const svdd::Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

py::array_t<double> from_vector(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

svdd::Criterion criterion_from(const std::string& name) {
  const auto c = svdd::parse_criterion(name);
  if (!c) throw svdd::Error(svdd::ErrorKind::BadConfig, "unknown criterion '" + name + "'");
  return *c;
}

std::vector<svdd::Label> to_labels(const std::vector<int>& labels) {
  std::vector<svdd::Label> out;
  out.reserve(labels.size());
  for (int v : labels) {
    if (v != 0 && v != 1) throw svdd::Error(svdd::ErrorKind::BadParams, "labels must be 0 (inlier) or 1 (outlier)");
    out.push_back(v ? svdd::Label::Outlier : svdd::Label::Inlier);
  }
  return out;
}

svdd::PositiveClass positive_from(const std::string& s) {
  if (s == "inlier") return svdd::PositiveClass::Inlier;
  if (s == "outlier") return svdd::PositiveClass::Outlier;
  throw svdd::Error(svdd::ErrorKind::BadConfig, "positive must be 'inlier' or 'outlier'");
}

py::dict record_dict(const svdd::PolygonRecord& r) {
  return py::dict("n_vertices"_a = r.n_vertices, "seed"_a = r.seed, "s_mean"_a = r.s_mean,
                  "s_median"_a = r.s_median, "s_max"_a = r.s_max, "f_mean"_a = r.f_mean,
                  "f_median"_a = r.f_median, "f_max"_a = r.f_max, "ratio_mean"_a = r.ratio_mean,
                  "ratio_median"_a = r.ratio_median, "failed"_a = r.failed, "error"_a = r.error);
}

py::dict summary_dict(const svdd::RatioSummary& s) {
  return py::dict("min"_a = s.min, "q1"_a = s.q1, "median"_a = s.median, "q3"_a = s.q3,
                  "max"_a = s.max, "mean"_a = s.mean);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gaussian-kernel SVDD with mean and median bandwidth criteria";

  // SvddError subclasses ValueError and carries the error kind as `.kind`.
  // The type lives as long as the interpreter, so the reference is kept.
  static py::handle error_type = py::exception<svdd::Error>(m, "SvddError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const svdd::Error& e) {
      py::object exc = error_type(e.what());
      exc.attr("kind") = std::string(svdd::to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.attr("DEFAULT_DELTA") = svdd::kDefaultDelta;
  m.attr("RNG_ALGORITHM") = std::string(svdd::Rng::kAlgorithm);

  m.def("mean_criterion",
        [](const Array& x, double delta) { return svdd::mean_criterion(to_dataset(x), delta); },
        "x"_a, "delta"_a = svdd::kDefaultDelta);
  m.def("median_criterion",
        [](const Array& x, double delta, std::optional<std::size_t> sample, std::uint64_t seed) {
          return svdd::median_criterion(to_dataset(x), delta, sample, seed);
        },
        "x"_a, "delta"_a = svdd::kDefaultDelta, "sample"_a = py::none(), "seed"_a = 0);
  m.def("median2_criterion", [](const Array& x) { return svdd::median2_criterion(to_dataset(x)); }, "x"_a);
  m.def("weighted_mean_criterion",
        [](const Array& x, const std::vector<double>& w, double delta) {
          const svdd::Dataset d = svdd::validate_dataset(to_dataset(x, w));
          return svdd::weighted_mean_criterion(d, delta);
        },
        "x"_a, "weights"_a, "delta"_a = svdd::kDefaultDelta);
  m.def("kernel_matrix",
        [](const Array& x, double s) { return from_matrix(svdd::kernel_matrix(to_dataset(x), s)); },
        "x"_a, "s"_a);

  py::class_<svdd::SvddModel>(m, "Model")
      .def_readonly("bandwidth", &svdd::SvddModel::bandwidth)
      .def_readonly("penalty", &svdd::SvddModel::penalty)
      .def_readonly("threshold", &svdd::SvddModel::threshold)
      .def_readonly("sv_self_term", &svdd::SvddModel::sv_self_term)
      .def_property_readonly("alphas", [](const svdd::SvddModel& mdl) { return from_vector(mdl.alphas); })
      .def_property_readonly("support_vectors",
                             [](const svdd::SvddModel& mdl) { return from_matrix(mdl.support_vectors); })
      .def_property_readonly("n_support", &svdd::SvddModel::n_support)
      .def_property_readonly("dim", &svdd::SvddModel::dim)
      .def_property_readonly("positions",
                             [](const svdd::SvddModel& mdl) {
                               std::vector<std::string> out;
                               for (auto p : mdl.position_tags) out.emplace_back(svdd::to_string(p));
                               return out;
                             })
      .def_property_readonly("converged", [](const svdd::SvddModel& mdl) { return mdl.provenance.converged; })
      .def_property_readonly("iterations", [](const svdd::SvddModel& mdl) { return mdl.provenance.iterations; })
      .def_property_readonly("criterion",
                             [](const svdd::SvddModel& mdl) { return std::string(svdd::to_string(mdl.provenance.criterion)); })
      .def("distance2",
           [](const svdd::SvddModel& mdl, const Array& z) {
             return from_vector(svdd::classify(mdl, to_dataset(z)).dist2);
           },
           "z"_a)
      .def("is_outlier",
           [](const svdd::SvddModel& mdl, const Array& z) {
             const auto r = svdd::classify(mdl, to_dataset(z));
             py::array_t<bool> out(static_cast<py::ssize_t>(r.size()));
             for (std::size_t i = 0; i < r.size(); ++i) out.mutable_data()[i] = r.is_outlier[i];
             return out;
           },
           "z"_a)
      .def("score_grid",
           [](const svdd::SvddModel& mdl, std::size_t resolution, std::optional<std::vector<double>> bounds) {
             svdd::GridSpec spec = svdd::default_grid(mdl, resolution);
             if (bounds) {
               if (bounds->size() != 4) throw svdd::Error(svdd::ErrorKind::BadParams, "bounds must be x0, x1, y0, y1");
               spec = {(*bounds)[0], (*bounds)[1], (*bounds)[2], (*bounds)[3], resolution};
             }
             const auto cells = svdd::score_grid(mdl, spec);
             py::array_t<double> out({cells.size(), std::size_t{4}});
             auto v = out.mutable_unchecked<2>();
             for (std::size_t k = 0; k < cells.size(); ++k) {
               v(k, 0) = cells[k].x;
               v(k, 1) = cells[k].y;
               v(k, 2) = cells[k].dist2;
               v(k, 3) = cells[k].inlier ? 1.0 : 0.0;
             }
             return out;
           },
           "resolution"_a = svdd::kDefaultGridResolution, "bounds"_a = py::none(),
           "Rows of (x, y, dist2, inlier) over the cell centers, y outer and x inner.")
      .def("save", [](const svdd::SvddModel& mdl, const std::filesystem::path& p) { svdd::io::save_model_file(mdl, p); },
           "path"_a)
      .def_static("load", [](const std::filesystem::path& p) { return svdd::io::load_model_file(p); }, "path"_a);

  m.def("train",
        [](const Array& x, double f, const std::string& criterion, std::optional<double> bandwidth,
           double delta, double tol, std::optional<std::vector<double>> weights) {
          svdd::TrainConfig cfg;
          cfg.outlier_fraction = f;
          cfg.kkt_tolerance = tol;
          cfg.bandwidth.delta = delta;
          if (bandwidth) {
            cfg.bandwidth.criterion = svdd::Criterion::Fixed;
            cfg.bandwidth.fixed_value = *bandwidth;
          } else {
            cfg.bandwidth.criterion = criterion_from(criterion);
          }
          return svdd::train(svdd::validate_dataset(to_dataset(x, weights)), cfg);
        },
        "x"_a, "f"_a = 0.001, "criterion"_a = "mean", "bandwidth"_a = py::none(),
        "delta"_a = svdd::kDefaultDelta, "tol"_a = svdd::kDefaultKktTolerance, "weights"_a = py::none());

  m.def("f1_score",
        [](std::size_t tp, std::size_t fp, std::size_t fn) { return svdd::f1_score({tp, fp, fn, 0}); },
        "tp"_a, "fp"_a, "fn"_a);

  m.def("bandwidth_grid_search",
        [](const Array& train, const Array& eval, const std::vector<int>& labels,
           std::optional<std::vector<double>> grid, double f, double delta, const std::string& positive) {
          const svdd::Dataset tr = svdd::validate_dataset(to_dataset(train));
          svdd::Dataset ev = to_dataset(eval);
          ev.labels = to_labels(labels);
          ev = svdd::validate_dataset(ev);
          const std::vector<double> s_grid = grid ? *grid : svdd::default_bandwidth_grid(tr, delta);
          svdd::TrainConfig cfg;
          cfg.outlier_fraction = f;
          cfg.bandwidth.delta = delta;
          const auto r = svdd::bandwidth_grid_search(tr, ev, s_grid, cfg, positive_from(positive));
          return py::dict("grid"_a = r.grid, "best_s"_a = r.best_s, "best_f1"_a = r.best_f1,
                          "failures"_a = r.failures);
        },
        "train"_a, "eval"_a, "labels"_a, "grid"_a = py::none(), "f"_a = 0.001,
        "delta"_a = svdd::kDefaultDelta, "positive"_a = "inlier");

  py::class_<svdd::PolygonInstance>(m, "Polygon")
      .def_property_readonly("vertices",
                             [](const svdd::PolygonInstance& p) {
                               py::array_t<double> out({p.vertices.size(), std::size_t{2}});
                               auto v = out.mutable_unchecked<2>();
                               for (std::size_t k = 0; k < p.vertices.size(); ++k) {
                                 v(k, 0) = p.vertices[k][0];
                                 v(k, 1) = p.vertices[k][1];
                               }
                               return out;
                             })
      .def_readonly("seed", &svdd::PolygonInstance::seed)
      .def_property_readonly("n_vertices", &svdd::PolygonInstance::n_vertices)
      .def_property_readonly("area", &svdd::PolygonInstance::area)
      .def("contains", [](const svdd::PolygonInstance& p, double x, double y) { return svdd::point_in_polygon(p, {x, y}); },
           "x"_a, "y"_a)
      .def("sample", [](const svdd::PolygonInstance& p, std::size_t n, std::uint64_t seed) {
             return from_matrix(svdd::sample_interior(p, n, seed).points);
           },
           "n"_a, "seed"_a);

  m.def("generate_polygon", &svdd::generate_polygon, "n_vertices"_a, "r_min"_a = 3.0, "r_max"_a = 5.0,
        "seed"_a = 0);

  m.def("run_simulation",
        [](const std::vector<std::size_t>& vertex_counts, std::size_t polygons_per_count, std::size_t n_sample,
           double f, std::size_t s_grid_size, std::uint64_t seed, std::size_t resolution) {
          svdd::SimulationParams params;
          params.vertex_counts = vertex_counts;
          params.polygons_per_count = polygons_per_count;
          params.n_sample = n_sample;
          params.outlier_fraction = f;
          params.s_grid_size = s_grid_size;
          params.seed = seed;
          params.resolution = resolution;
          svdd::SimulationReport report;
          {
            py::gil_scoped_release release;
            report = svdd::run_simulation(params);
          }
          py::list polygons;
          for (const auto& r : report.polygons) polygons.append(record_dict(r));
          py::list aggregates;
          for (const auto& a : report.aggregates) {
            aggregates.append(py::dict("n_vertices"_a = a.n_vertices, "n_polygons"_a = a.n_polygons,
                                       "excluded"_a = a.excluded, "ratio_mean"_a = summary_dict(a.ratio_mean),
                                       "ratio_median"_a = summary_dict(a.ratio_median)));
          }
          return py::dict("polygons"_a = polygons, "aggregates"_a = aggregates);
        },
        "vertex_counts"_a, "polygons_per_count"_a = 20, "n_sample"_a = 600, "f"_a = 0.001,
        "s_grid_size"_a = 30, "seed"_a = 0, "resolution"_a = svdd::kDefaultGridResolution);
}
