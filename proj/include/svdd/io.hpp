#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svdd/dataset.hpp"
#include "svdd/model.hpp"

namespace svdd::io {

enum class HeaderMode { Auto, Yes, No };

struct CsvOptions {
  HeaderMode header = HeaderMode::Auto;
  // Column name (when there is a header) or zero-based index.
  std::optional<std::string> weights_col;
  std::optional<std::string> label_col;
};

/// Reads numeric CSV into a Dataset. Decimal parsing is locale independent.
/// The header is detected by a non-numeric first row unless forced. Labels
/// accept 0/1 (1 = outlier) or inlier/outlier. The result is not validated.
Dataset read_csv(std::istream& in, const CsvOptions& options = {});
Dataset read_csv_file(const std::filesystem::path& path, const CsvOptions& options = {});

/// Shortest text that parses back to the same double (17 significant digits).
std::string format_double(double v);

/// Writes `contents` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

inline constexpr int kModelFormatVersion = 1;

/// Versioned plain-text key/value header followed by one "alpha x1 .. xp"
/// row per support vector and a closing "end" line.
void save_model(const SvddModel& model, std::ostream& out);
SvddModel load_model(std::istream& in);

void save_model_file(const SvddModel& model, const std::filesystem::path& path);
SvddModel load_model_file(const std::filesystem::path& path);

}  // namespace svdd::io
