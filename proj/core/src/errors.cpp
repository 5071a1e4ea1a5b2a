#include "topotess/errors.hpp"

namespace topotess {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
  case Errc::NonFinitePoint: return "NonFinitePoint";
  case Errc::FewerThanThreePoints: return "FewerThanThreePoints";
  case Errc::AllCollinear: return "AllCollinear";
  case Errc::DuplicatePoints: return "DuplicatePoints";
  case Errc::Collinear: return "Collinear";
  case Errc::DegeneratePolygon: return "DegeneratePolygon";
  case Errc::NonConvexPolygon: return "NonConvexPolygon";
  case Errc::PointOutsideBox: return "PointOutsideBox";
  case Errc::UnsortedFiltration: return "UnsortedFiltration";
  case Errc::FaceAfterCoface: return "FaceAfterCoface";
  case Errc::UnexpectedInfiniteBars: return "UnexpectedInfiniteBars";
  case Errc::CapBelowMaxDeath: return "CapBelowMaxDeath";
  case Errc::EmptyBarcode: return "EmptyBarcode";
  case Errc::InfiniteBarPresent: return "InfiniteBarPresent";
  case Errc::SingleBar: return "SingleBar";
  case Errc::NonPositiveLength: return "NonPositiveLength";
  case Errc::IoError: return "IoError";
  case Errc::MalformedFile: return "MalformedFile";
  case Errc::NegativeLabel: return "NegativeLabel";
  case Errc::NotEnoughCells: return "NotEnoughCells";
  case Errc::UnknownLabel: return "UnknownLabel";
  case Errc::EmptyGroup: return "EmptyGroup";
  case Errc::TooFewGroups: return "TooFewGroups";
  case Errc::AllValuesIdentical: return "AllValuesIdentical";
  case Errc::OutOfRangeP: return "OutOfRangeP";
  case Errc::ExactWithTies: return "ExactWithTies";
  case Errc::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

ErrorKind kind_of(Errc code) noexcept {
  switch (code) {
  case Errc::ConfigError:
  case Errc::TooFewGroups:
  case Errc::OutOfRangeP:
  case Errc::ExactWithTies:
    return ErrorKind::Config;
  case Errc::IoError:
  case Errc::MalformedFile:
  case Errc::NegativeLabel:
  case Errc::NotEnoughCells:
  case Errc::UnknownLabel:
  case Errc::EmptyGroup:
  case Errc::PointOutsideBox:
  case Errc::NonFinitePoint:
    return ErrorKind::Data;
  default:
    return ErrorKind::Numeric;
  }
}

} // namespace topotess
