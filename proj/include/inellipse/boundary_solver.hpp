#pragma once

#include "inellipse/geometry.hpp"
#include "inellipse/tolerances.hpp"
#include "inellipse/unit_kernel.hpp"

namespace inellipse {

/// Sides of the unit triangle: y = 0, x = 0, x + y = 1.
enum class Side { Bottom, Left, Hypotenuse };

struct SidePoint {
  Side side = Side::Bottom;
  Point point;
};

/// Which open side of the unit triangle `p` lies on. Throws Error(VertexPoint)
/// near a vertex and Error(NotOnSide) away from every side.
Side classify_side(Point p, const Tolerances& tol = {});

/// Validates side membership and vertex exclusion for one tangency point.
void require_on_side(const SidePoint& sp, const Tolerances& tol = {});

/// The unique inscribed ellipse touching the two given sides at the given
/// points. Throws Error(SameSide), Error(NotOnSide) or Error(VertexPoint).
EllipseParam param_from_tangencies(const SidePoint& s1, const SidePoint& s2,
                                   const Tolerances& tol = {});

}  // namespace inellipse
