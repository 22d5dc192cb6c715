#include "galli/error.hpp"

namespace galli {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::VarSetMismatch: return "VarSetMismatch";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::ZeroIdeal: return "ZeroIdeal";
    case ErrorCode::NonCoordinateHypersurface: return "NonCoordinateHypersurface";
    case ErrorCode::NotStraight: return "NotStraight";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::BadDegree: return "BadDegree";
    case ErrorCode::HabitatMismatch: return "HabitatMismatch";
    case ErrorCode::ZeroSingularity: return "ZeroSingularity";
    case ErrorCode::CenterNotInSingLocus: return "CenterNotInSingLocus";
    case ErrorCode::ZoomNotFound: return "ZoomNotFound";
    case ErrorCode::NotBold: return "NotBold";
    case ErrorCode::Bold: return "Bold";
    case ErrorCode::Resolved: return "Resolved";
    case ErrorCode::NonIntegralDegree: return "NonIntegralDegree";
    case ErrorCode::IllegalDescent: return "IllegalDescent";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::ReplayDivergence: return "ReplayDivergence";
    case ErrorCode::TerminationBreach: return "TerminationBreach";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::InvariantBreach: return "InvariantBreach";
  }
  return "Unknown";
}

}  // namespace galli
