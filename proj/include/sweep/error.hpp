#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sweep {

enum class ErrorKind {
  NonPositiveRadius,
  OutOfRange,
  InvalidArgument,
  DimensionMismatch,
  GridMismatch,
  SupportOutsideDomain,
  FieldSupportEscapesDomain,
  DilatedSupportEscapesDomain,
  BadNodeCount,
  BallEscapesDomain,
  BallsOverlap,
  BallOutsideAnnulus,
  BadRadii,
  DomainTooThin,
  NoConvergence,
  FieldPointCheckFailed,
  HypothesisFailed,
  TooFewNodes,
  Degenerate,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace sweep
