#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace topotess {

enum class Errc {
  // geometry
  NonFinitePoint,
  FewerThanThreePoints,
  AllCollinear,
  DuplicatePoints,
  Collinear,
  DegeneratePolygon,
  NonConvexPolygon,
  PointOutsideBox,
  // persistence
  UnsortedFiltration,
  FaceAfterCoface,
  UnexpectedInfiniteBars,
  CapBelowMaxDeath,
  // entropy
  EmptyBarcode,
  InfiniteBarPresent,
  SingleBar,
  NonPositiveLength,
  // imagepipe
  IoError,
  MalformedFile,
  NegativeLabel,
  NotEnoughCells,
  UnknownLabel,
  // stats
  EmptyGroup,
  TooFewGroups,
  AllValuesIdentical,
  OutOfRangeP,
  ExactWithTies,
  // configuration
  ConfigError,
};

/// Coarse classification used for CLI exit codes.
enum class ErrorKind { Config, Data, Numeric };

std::string_view to_string(Errc code) noexcept;
ErrorKind kind_of(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(std::move(detail)) {}
  explicit Error(Errc code) : std::runtime_error(std::string(to_string(code))), code_(code) {}

  Errc code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }
  /// Message without the error-code prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  Errc code_;
  std::string detail_;
};

} // namespace topotess
