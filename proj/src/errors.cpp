#include "confdop/errors.hpp"

namespace confdop {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularTransform: return "SingularTransform";
    case ErrorKind::DomainCrossing: return "DomainCrossing";
    case ErrorKind::SlopeSingular: return "SlopeSingular";
    case ErrorKind::ZeroRadius: return "ZeroRadius";
    case ErrorKind::StepDivergence: return "StepDivergence";
    case ErrorKind::NotPastCone: return "NotPastCone";
    case ErrorKind::OutsideFirstOrderRegime: return "OutsideFirstOrderRegime";
    case ErrorKind::EpochOutOfRange: return "EpochOutOfRange";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::ZeroRange: return "ZeroRange";
    case ErrorKind::DegenerateDesign: return "DegenerateDesign";
    case ErrorKind::ZeroSigma: return "ZeroSigma";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace confdop
