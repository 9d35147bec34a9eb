#include "svdd/config.hpp"

#include <string>

#include "svdd/error.hpp"

namespace svdd {

std::string_view to_string(Criterion c) noexcept {
  switch (c) {
    case Criterion::Mean: return "mean";
    case Criterion::Median: return "median";
    case Criterion::Median2: return "median2";
    case Criterion::Fixed: return "fixed";
  }
  return "unknown";
}

std::optional<Criterion> parse_criterion(std::string_view name) noexcept {
  if (name == "mean") return Criterion::Mean;
  if (name == "median") return Criterion::Median;
  if (name == "median2") return Criterion::Median2;
  if (name == "fixed") return Criterion::Fixed;
  return std::nullopt;
}

void BandwidthConfig::check() const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::BadConfig, "delta must lie in (0, 1), got " + std::to_string(delta));
  }
  if (criterion == Criterion::Fixed && !(fixed_value && *fixed_value > 0.0 &&
                                         std::isfinite(*fixed_value))) {
    throw Error(ErrorKind::BadConfig, "fixed criterion needs a positive bandwidth value");
  }
  if (median_sample_size && *median_sample_size < 2) {
    throw Error(ErrorKind::BadConfig, "median sample size must be at least 2");
  }
}

void TrainConfig::check() const {
  if (!(outlier_fraction > 0.0 && outlier_fraction <= 1.0)) {
    throw Error(ErrorKind::BadConfig,
                "outlier fraction must lie in (0, 1], got " + std::to_string(outlier_fraction));
  }
  if (!(kkt_tolerance > 0.0) || !std::isfinite(kkt_tolerance)) {
    throw Error(ErrorKind::BadConfig, "kkt tolerance must be positive");
  }
  bandwidth.check();
}

}  // namespace svdd
