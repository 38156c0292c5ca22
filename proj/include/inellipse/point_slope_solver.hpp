#pragma once

#include <array>
#include <optional>
#include <variant>

#include "inellipse/geometry.hpp"
#include "inellipse/tolerances.hpp"
#include "inellipse/unit_kernel.hpp"

namespace inellipse {

struct PointSlopeQuery {
  Point p;
  Slope slope = Slope::vertical();
};

/// q_w(r) and q_t(r), the positive denominators of the closed form.
struct SlopeRationals {
  double qw = 0.0;
  double qt = 0.0;
  /// Slope y0 (2 x0 + y0 - 1) / (x0 (2 x0 + y0 - 2)); diagnostic only.
  std::optional<double> r0;
};

/// The requested slope points at a vertex: no inscribed ellipse has it.
struct NoSolution {
  Vertex vertex = Vertex::Origin;

  friend bool operator==(const NoSolution&, const NoSolution&) = default;
};

using PointSlopeResult = std::variant<EllipseParam, NoSolution>;

/// Throws Error(NotInterior).
SlopeRationals slope_rationals(Point p, double r);

/// Slopes of the lines from p to (0,0), (1,0), (0,1), in that order.
std::array<Slope, 3> vertex_slopes(Point p);

/// The unique inscribed ellipse through p with the given tangent slope, or
/// NoSolution when the slope is that of a line through p and a vertex.
PointSlopeResult solve_point_slope_unit(const PointSlopeQuery& query, const Tolerances& tol = {});

/// Left-hand sides of the point-on-curve and slope-at-point conditions in
/// (w, t), each divided by the magnitude of its largest term.
std::array<double, 2> residual_point_slope(Point p, Slope slope, const EllipseParam& param);

}  // namespace inellipse
