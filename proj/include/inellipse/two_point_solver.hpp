#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inellipse/conic.hpp"
#include "inellipse/execution.hpp"
#include "inellipse/geometry.hpp"
#include "inellipse/tolerances.hpp"
#include "inellipse/unit_kernel.hpp"

namespace inellipse {

/// Generic pairs admit four ellipses; pairs on a line through a vertex admit two.
struct PairCase {
  enum class Kind { Generic, GenericJZero, VertexLine };

  Kind kind = Kind::Generic;
  Vertex vertex = Vertex::Origin;  // meaningful for VertexLine only

  static PairCase generic() { return {Kind::Generic, Vertex::Origin}; }
  static PairCase generic_j_zero() { return {Kind::GenericJZero, Vertex::Origin}; }
  static PairCase vertex_line(Vertex v) { return {Kind::VertexLine, v}; }

  /// Number of inscribed ellipses through both points.
  int expected_count() const { return kind == Kind::VertexLine ? 2 : 4; }
  /// "generic_4", "generic_j_zero", "vertex_line:origin" ...
  std::string tag() const;

  friend bool operator==(const PairCase&, const PairCase&) = default;
};

std::string vertex_name(Vertex v);

struct TwoPointSolution {
  EllipseParam param;
  ConicCoeffs conic;
  TangencyTriple tangency;
  std::array<double, 2> residuals{};
};

struct TwoPointResult {
  PairCase pair_case;
  /// Sorted by t, then w.
  std::vector<TwoPointSolution> solutions;
};

/// Throws Error(NotInterior), Error(CoincidentPoints) or
/// Error(AmbiguousClassification).
PairCase classify_pair(Point p1, Point p2, const Tolerances& tol = {});

/// The two left-hand sides of
///   q_j(t) w^2 + 2 t y_j ((2 x_j - 1) t - x_j) w + t^2 y_j^2 = 0,  j = 1, 2
/// each divided by the magnitude of its largest term.
std::array<double, 2> residual_system3(Point p1, Point p2, const EllipseParam& param);

/// All inscribed ellipses of the unit triangle through two interior points.
/// Throws Error(SolutionCountMismatch) when the filtered count disagrees with
/// the case count.
TwoPointResult solve_two_points_unit(Point p1, Point p2, const Tolerances& tol = {});

struct PairSolveOutcome {
  std::optional<TwoPointResult> result;
  std::string error;  // empty on success
};

/// Solves many pairs; entry i corresponds to pairs[i] regardless of `exec`.
std::vector<PairSolveOutcome> solve_two_points_batch(std::span<const std::pair<Point, Point>> pairs,
                                                     const Tolerances& tol = {},
                                                     Execution exec = Execution::Parallel);

}  // namespace inellipse
