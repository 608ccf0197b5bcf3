#include "fluxriver/error.hpp"

namespace fluxriver {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingCell: return "MissingCell";
    case ErrorCode::UnknownMood: return "UnknownMood";
    case ErrorCode::DuplicateCell: return "DuplicateCell";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::BadAccuracyRange: return "BadAccuracyRange";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::WrongColumnCount: return "WrongColumnCount";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::WindowCountMismatch: return "WindowCountMismatch";
    case ErrorCode::LTooLarge: return "LTooLarge";
    case ErrorCode::ZeroTotalStep: return "ZeroTotalStep";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyGeometry: return "EmptyGeometry";
    case ErrorCode::ScaleMismatch: return "ScaleMismatch";
    case ErrorCode::ConservationViolated: return "ConservationViolated";
    case ErrorCode::IdMismatch: return "IdMismatch";
  }
  return "Unknown";
}

namespace {

std::string compose_message(ErrorCode code, const std::string& detail,
                            const std::optional<std::size_t>& line) {
  std::string msg{to_string(code)};
  if (line) msg += " (line " + std::to_string(*line) + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail, std::optional<std::size_t> line)
    : std::runtime_error(compose_message(code, detail, line)),
      code_(code),
      line_(line),
      detail_(std::move(detail)) {}

}  // namespace fluxriver
