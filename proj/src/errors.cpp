#include "staudtlab/errors.hpp"

namespace staudt {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::Semantic: return "Semantic";
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InfiniteRing: return "InfiniteRing";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::FrameDegenerate: return "FrameDegenerate";
    case ErrorKind::NotResolvable: return "NotResolvable";
    case ErrorKind::TwoNotUnit: return "TwoNotUnit";
    case ErrorKind::NonUnitDifference: return "NonUnitDifference";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::FrameNotFixed: return "FrameNotFixed";
    case ErrorKind::CharacteristicTwo: return "CharacteristicTwo";
    case ErrorKind::NotJordan: return "NotJordan";
    case ErrorKind::InconsistentParameterization: return "InconsistentParameterization";
    case ErrorKind::DegenerateArguments: return "DegenerateArguments";
    case ErrorKind::DegenerateAux: return "DegenerateAux";
    case ErrorKind::ChainMismatch: return "ChainMismatch";
    case ErrorKind::NotAffine: return "NotAffine";
    case ErrorKind::NoIntersection: return "NoIntersection";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string witness,
             std::size_t position)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      witness_(std::move(witness)),
      position_(position) {}

}  // namespace staudt
