#include "svdd/error.hpp"

namespace svdd {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyData: return "EmptyData";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::LabelMismatch: return "LabelMismatch";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::LogDomain: return "LogDomain";
    case ErrorKind::MissingWeights: return "MissingWeights";
    case ErrorKind::BadBandwidth: return "BadBandwidth";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::NoBoundarySV: return "NoBoundarySV";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotTwoDimensional: return "NotTwoDimensional";
    case ErrorKind::MissingLabels: return "MissingLabels";
    case ErrorKind::AllFailed: return "AllFailed";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ModelFormat: return "ModelFormat";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace svdd
