#include "inellipse/error.hpp"

namespace inellipse {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::DegenerateConic: return "DegenerateConic";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::AmbiguousClassification: return "AmbiguousClassification";
    case ErrorCode::SolutionCountMismatch: return "SolutionCountMismatch";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::SameSide: return "SameSide";
    case ErrorCode::NotOnSide: return "NotOnSide";
    case ErrorCode::VertexPoint: return "VertexPoint";
    case ErrorCode::NotAnEllipse: return "NotAnEllipse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace inellipse
