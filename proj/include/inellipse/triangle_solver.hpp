#pragma once

// Query front end for arbitrary triangles. Each query is mapped to the unit
// triangle, solved there, and the ellipses are mapped back.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "inellipse/conic.hpp"
#include "inellipse/geometry.hpp"
#include "inellipse/tolerances.hpp"
#include "inellipse/unit_kernel.hpp"

namespace inellipse {

struct WorldEllipse {
  /// Parameters in the unit-triangle frame of the query triangle.
  EllipseParam param;
  ConicCoeffs conic;
  /// Contact points on sides ab, ac and bc.
  std::array<Point, 3> tangency;
  Point center;
  /// Normalized residuals of the defining conditions.
  std::array<double, 2> residuals{};
};

struct SolveReport {
  /// "generic_4", "generic_j_zero", "vertex_line:top", "unique",
  /// "no_solution:origin", "boundary_unique", ...
  std::string case_tag;
  std::vector<WorldEllipse> ellipses;
  /// Set for point-slope queries aimed at a vertex.
  std::optional<Vertex> no_solution;
  /// Query points expressed in the unit frame (for the oracle).
  std::vector<Point> unit_points;
  std::optional<Slope> unit_slope;
};

/// Throws Error(NotInterior) if a point is not strictly inside `tri`.
SolveReport solve_two_points(const Triangle& tri, Point p1, Point p2, const Tolerances& tol = {});

SolveReport solve_point_slope(const Triangle& tri, Point p, Slope slope,
                              const Tolerances& tol = {});

/// Tangency points must lie on two different open sides of `tri`.
SolveReport solve_tangency(const Triangle& tri, Point p1, Point p2, const Tolerances& tol = {});

/// Pushes a unit-frame ellipse into the world frame of `tri`.
WorldEllipse to_world(const Triangle& tri, const EllipseParam& param,
                      std::array<double, 2> residuals);

}  // namespace inellipse
