#include "whittaker/error.hpp"

namespace whittaker {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::NotSimpleRoot: return "NotSimpleRoot";
    case ErrorKind::MixedRootSystem: return "MixedRootSystem";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonOrthogonalSupport: return "NonOrthogonalSupport";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ReductionDivergence: return "ReductionDivergence";
    case ErrorKind::NotGraded: return "NotGraded";
    case ErrorKind::NotInNilradical: return "NotInNilradical";
    case ErrorKind::TruncationNotClosed: return "TruncationNotClosed";
    case ErrorKind::UnknownLength: return "UnknownLength";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace whittaker
