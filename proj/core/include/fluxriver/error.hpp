#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fluxriver {

enum class ErrorCode {
  InvalidArgument,
  MissingCell,
  UnknownMood,
  DuplicateCell,
  MalformedRow,
  BadAccuracyRange,
  BadRange,
  NegativeCount,
  WrongColumnCount,
  EmptyList,
  WindowCountMismatch,
  LTooLarge,
  ZeroTotalStep,
  DimensionMismatch,
  EmptyGeometry,
  ScaleMismatch,
  ConservationViolated,
  IdMismatch,
};

std::string_view to_string(ErrorCode code);

// Every domain failure surfaces as this exception. `line` is the 1-based
// source line for parse errors and empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::size_t>& line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
  std::string detail_;
};

}  // namespace fluxriver
