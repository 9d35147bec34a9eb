#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svdd {

enum class ErrorKind {
  EmptyData,
  NonFinite,
  BadWeights,
  RaggedRows,
  LabelMismatch,
  BadConfig,
  TooFewPoints,
  DegenerateData,
  LogDomain,
  MissingWeights,
  BadBandwidth,
  Infeasible,
  NoBoundarySV,
  TooLarge,
  DimensionMismatch,
  NotTwoDimensional,
  MissingLabels,
  AllFailed,
  BadParams,
  ModelFormat,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so
/// front ends can map it to exit codes or Python exception types.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace svdd
