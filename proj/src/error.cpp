#include "kleinian/error.hpp"

namespace kleinian {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::CoincidentLines: return "CoincidentLines";
    case ErrorCode::DuplicateLines: return "DuplicateLines";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::IsIdentity: return "IsIdentity";
    case ErrorCode::UnclassifiedElement: return "UnclassifiedElement";
    case ErrorCode::NonDiscreteLattice: return "NonDiscreteLattice";
    case ErrorCode::NonUnitaryMu: return "NonUnitaryMu";
    case ErrorCode::DegenerateGamma1: return "DegenerateGamma1";
    case ErrorCode::NonDiscreteHeuristic: return "NonDiscreteHeuristic";
    case ErrorCode::UnitaryParameter: return "UnitaryParameter";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::ElementarySigma: return "ElementarySigma";
    case ErrorCode::UnitaryAlpha: return "UnitaryAlpha";
    case ErrorCode::MuConditionViolated: return "MuConditionViolated";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::NotToralSpec: return "NotToralSpec";
    case ErrorCode::NotGloballyFixed: return "NotGloballyFixed";
    case ErrorCode::PointOnHorizon: return "PointOnHorizon";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadChart: return "BadChart";
  }
  return "Unknown";
}

}  // namespace kleinian
