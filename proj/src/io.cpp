#include "svdd/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "svdd/error.hpp"
#include "svdd/random.hpp"

namespace svdd::io {
namespace {

constexpr std::string_view kMagic = "svdd-model";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<Label> parse_label(std::string_view s) {
  const std::string l = lower(s);
  if (l == "inlier" || l == "inside" || l == "normal") return Label::Inlier;
  if (l == "outlier" || l == "outside" || l == "anomaly") return Label::Outlier;
  if (const auto v = parse_double(s)) {
    if (*v == 0.0) return Label::Inlier;
    if (*v == 1.0) return Label::Outlier;
  }
  return std::nullopt;
}

std::size_t resolve_column(const std::string& spec, const std::vector<std::string>& names,
                           std::size_t n_cols, std::string_view what) {
  const bool numeric = !spec.empty() && std::all_of(spec.begin(), spec.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
  std::size_t idx = n_cols;
  if (const auto it = std::find(names.begin(), names.end(), spec); it != names.end()) {
    idx = static_cast<std::size_t>(it - names.begin());
  } else if (numeric) {
    idx = std::stoul(spec);
  }
  if (idx >= n_cols) {
    throw Error(ErrorKind::Io, std::string(what) + " column '" + spec + "' not found");
  }
  return idx;
}

}  // namespace

Dataset read_csv(std::istream& in, const CsvOptions& options) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!trim(line).empty()) lines.push_back(std::move(line));
  }
  if (lines.empty()) throw Error(ErrorKind::EmptyData, "CSV input is empty");

  const auto first = split(lines.front(), ',');
  bool has_header = options.header == HeaderMode::Yes;
  if (options.header == HeaderMode::Auto) {
    has_header = std::any_of(first.begin(), first.end(), [](std::string_view cell) {
      return !parse_double(cell) && !parse_label(cell);
    });
  }
  std::vector<std::string> names;
  if (has_header) {
    for (auto cell : first) names.emplace_back(cell);
  }
  const std::size_t n_cols = first.size();

  std::optional<std::size_t> weight_idx;
  std::optional<std::size_t> label_idx;
  if (options.weights_col) weight_idx = resolve_column(*options.weights_col, names, n_cols, "weights");
  if (options.label_col) label_idx = resolve_column(*options.label_col, names, n_cols, "label");
  if (weight_idx && label_idx && *weight_idx == *label_idx) {
    throw Error(ErrorKind::Io, "weights and label columns must differ");
  }
  std::size_t n_features = n_cols - (weight_idx ? 1 : 0) - (label_idx ? 1 : 0);

  Dataset data(Matrix(0, n_features));
  std::vector<double> weights;
  std::vector<Label> labels;
  std::vector<double> row;
  row.reserve(n_features);
  const std::size_t start = has_header ? 1 : 0;
  for (std::size_t li = start; li < lines.size(); ++li) {
    const std::size_t r = li - start;
    const auto cells = split(lines[li], ',');
    if (cells.size() != n_cols) {
      throw Error(ErrorKind::RaggedRows, "row " + std::to_string(r) + " has " +
                                             std::to_string(cells.size()) + " fields, expected " +
                                             std::to_string(n_cols));
    }
    row.clear();
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (label_idx && c == *label_idx) {
        const auto lab = parse_label(cells[c]);
        if (!lab) {
          throw Error(ErrorKind::Io, "row " + std::to_string(r) + ": label '" +
                                         std::string(cells[c]) + "' is not 0/1 or inlier/outlier");
        }
        labels.push_back(*lab);
        continue;
      }
      const auto v = parse_double(cells[c]);
      if (!v) {
        throw Error(ErrorKind::Io, "row " + std::to_string(r) + ", column " + std::to_string(c) +
                                       ": '" + std::string(cells[c]) + "' is not a number");
      }
      if (weight_idx && c == *weight_idx) {
        weights.push_back(*v);
      } else {
        row.push_back(*v);
      }
    }
    data.points.append_row(row);
  }
  if (weight_idx) data.weights = std::move(weights);
  if (label_idx) data.labels = std::move(labels);
  return data;
}

Dataset read_csv_file(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_csv(in, options);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out.flush()) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename onto " + path.string() + ": " + ec.message());
}

void save_model(const SvddModel& model, std::ostream& out) {
  const auto& prov = model.provenance;
  const std::size_t p = model.dim();
  out << kMagic << '\n';
  out << "format_version " << kModelFormatVersion << '\n';
  out << "rng " << Rng::kAlgorithm << '\n';
  out << "criterion " << to_string(prov.criterion) << '\n';
  out << "delta " << format_double(prov.delta) << '\n';
  out << "outlier_fraction " << format_double(prov.outlier_fraction) << '\n';
  out << "n_train " << prov.n_train << '\n';
  out << "converged " << (prov.converged ? 1 : 0) << '\n';
  out << "kkt_violation " << format_double(prov.kkt_violation) << '\n';
  out << "iterations " << prov.iterations << '\n';
  out << "bandwidth " << format_double(model.bandwidth) << '\n';
  out << "penalty " << format_double(model.penalty) << '\n';
  out << "threshold " << format_double(model.threshold) << '\n';
  out << "sv_self_term " << format_double(model.sv_self_term) << '\n';
  out << "dimension " << p << '\n';
  if (prov.data_min.size() == p && prov.data_max.size() == p) {
    out << "data_min";
    for (double v : prov.data_min) out << ' ' << format_double(v);
    out << "\ndata_max";
    for (double v : prov.data_max) out << ' ' << format_double(v);
    out << '\n';
  }
  out << "n_support " << model.n_support() << '\n';
  out << "support_vectors\n";
  for (std::size_t i = 0; i < model.n_support(); ++i) {
    out << format_double(model.alphas[i]);
    for (double v : model.support_vectors.row(i)) out << ' ' << format_double(v);
    out << '\n';
  }
  out << "end\n";
}

SvddModel load_model(std::istream& in) {
  auto fail = [](const std::string& why) -> Error { return Error(ErrorKind::ModelFormat, why); };
  std::string line;
  if (!std::getline(in, line) || trim(line) != kMagic) throw fail("missing svdd-model header");

  std::map<std::string, std::vector<std::string>> fields;
  bool table = false;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t == "support_vectors") {
      table = true;
      break;
    }
    std::istringstream ss{std::string(t)};
    std::string key;
    ss >> key;
    std::vector<std::string> values;
    for (std::string v; ss >> v;) values.push_back(v);
    fields[key] = std::move(values);
  }
  if (!table) throw fail("truncated: no support_vectors table");

  auto scalar = [&](const std::string& key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end() || it->second.size() != 1) throw fail("missing or malformed '" + key + "'");
    return it->second.front();
  };
  auto number = [&](const std::string& key) {
    const auto v = parse_double(scalar(key));
    if (!v) throw fail("'" + key + "' is not a number");
    return *v;
  };
  auto count = [&](const std::string& key) {
    const double v = number(key);
    if (v < 0 || v != std::floor(v)) throw fail("'" + key + "' is not a count");
    return static_cast<std::size_t>(v);
  };

  const auto version = count("format_version");
  if (version != static_cast<std::size_t>(kModelFormatVersion)) {
    throw fail("unsupported format_version " + std::to_string(version));
  }

  SvddModel model;
  auto& prov = model.provenance;
  const auto crit = parse_criterion(scalar("criterion"));
  if (!crit) throw fail("unknown criterion '" + scalar("criterion") + "'");
  prov.criterion = *crit;
  prov.delta = number("delta");
  prov.outlier_fraction = number("outlier_fraction");
  prov.n_train = count("n_train");
  prov.converged = count("converged") != 0;
  prov.kkt_violation = number("kkt_violation");
  prov.iterations = count("iterations");
  model.bandwidth = number("bandwidth");
  model.penalty = number("penalty");
  model.threshold = number("threshold");
  model.sv_self_term = number("sv_self_term");
  const std::size_t p = count("dimension");
  const std::size_t m = count("n_support");
  if (p == 0) throw fail("dimension must be positive");
  if (!(model.bandwidth > 0.0) || !std::isfinite(model.bandwidth)) throw fail("bad bandwidth");

  for (const char* key : {"data_min", "data_max"}) {
    const auto it = fields.find(key);
    if (it == fields.end()) continue;
    if (it->second.size() != p) throw fail(std::string(key) + " has the wrong length");
    auto& dst = std::string_view(key) == "data_min" ? prov.data_min : prov.data_max;
    for (const auto& s : it->second) {
      const auto v = parse_double(s);
      if (!v) throw fail(std::string(key) + " is not numeric");
      dst.push_back(*v);
    }
  }

  model.support_vectors = Matrix(0, p);
  std::vector<double> row(p);
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw fail("truncated: expected " + std::to_string(m) + " rows");
    std::istringstream ss{std::string(trim(line))};
    std::vector<std::string> cells;
    for (std::string v; ss >> v;) cells.push_back(v);
    if (cells.size() != p + 1) throw fail("support vector row " + std::to_string(i) + " is malformed");
    const auto alpha = parse_double(cells[0]);
    if (!alpha || !(*alpha > 0.0)) throw fail("support vector row " + std::to_string(i) + " has a bad alpha");
    for (std::size_t j = 0; j < p; ++j) {
      const auto v = parse_double(cells[j + 1]);
      if (!v || !std::isfinite(*v)) throw fail("support vector row " + std::to_string(i) + " is not numeric");
      row[j] = *v;
    }
    model.alphas.push_back(*alpha);
    model.support_vectors.append_row(row);
  }
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    if (trim(line) == "end") return model;
    break;
  }
  throw fail("truncated: missing 'end' marker");
}

void save_model_file(const SvddModel& model, const std::filesystem::path& path) {
  std::ostringstream out;
  save_model(model, out);
  write_file_atomic(path, out.str());
}

SvddModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ModelFormat, "cannot open model file " + path.string());
  return load_model(in);
}

}  // namespace svdd::io
