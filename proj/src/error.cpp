#include "sweep/error.hpp"

namespace sweep {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::SupportOutsideDomain: return "SupportOutsideDomain";
    case ErrorKind::FieldSupportEscapesDomain: return "FieldSupportEscapesDomain";
    case ErrorKind::DilatedSupportEscapesDomain: return "DilatedSupportEscapesDomain";
    case ErrorKind::BadNodeCount: return "BadNodeCount";
    case ErrorKind::BallEscapesDomain: return "BallEscapesDomain";
    case ErrorKind::BallsOverlap: return "BallsOverlap";
    case ErrorKind::BallOutsideAnnulus: return "BallOutsideAnnulus";
    case ErrorKind::BadRadii: return "BadRadii";
    case ErrorKind::DomainTooThin: return "DomainTooThin";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::FieldPointCheckFailed: return "FieldPointCheckFailed";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::TooFewNodes: return "TooFewNodes";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace sweep
