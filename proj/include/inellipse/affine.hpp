#pragma once

#include "inellipse/geometry.hpp"

namespace inellipse {

/// Throws Error(DegenerateTriangle) if the vertices are (nearly) collinear.
void validate_triangle(const Triangle& tri);

/// The unique affine map sending tri.a -> (0,0), tri.b -> (1,0), tri.c -> (0,1).
AffineMap map_to_unit(const Triangle& tri);

Point apply_point(const AffineMap& map, Point p);

/// Throws Error(SingularMap).
AffineMap invert(const AffineMap& map);

/// Direction (1, r) (or (0, 1) when vertical) pushed through the linear part.
Slope apply_slope(const AffineMap& map, Slope slope);

/// Composition: (outer o inner)(p) = outer(inner(p)).
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

/// True when p lies strictly inside the unit triangle.
bool in_unit_interior(Point p);

}  // namespace inellipse
