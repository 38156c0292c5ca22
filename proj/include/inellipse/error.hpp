#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inellipse {

enum class ErrorCode {
  OutOfDomain,
  NotInterior,
  CoincidentPoints,
  SingularPoint,
  DegenerateConic,
  SingularMap,
  DegenerateTriangle,
  AmbiguousClassification,
  SolutionCountMismatch,
  ZeroPolynomial,
  SameSide,
  NotOnSide,
  VertexPoint,
  NotAnEllipse,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every precondition failure in the library surfaces as this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace inellipse
