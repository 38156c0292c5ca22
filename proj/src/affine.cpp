#include "inellipse/affine.hpp"

#include <algorithm>
#include <cmath>

#include "inellipse/error.hpp"

namespace inellipse {

namespace {

double triangle_scale(const Triangle& tri) {
  const double min_x = std::min({tri.a.x, tri.b.x, tri.c.x});
  const double max_x = std::max({tri.a.x, tri.b.x, tri.c.x});
  const double min_y = std::min({tri.a.y, tri.b.y, tri.c.y});
  const double max_y = std::max({tri.a.y, tri.b.y, tri.c.y});
  return std::max(max_x - min_x, max_y - min_y);
}

}  // namespace

void validate_triangle(const Triangle& tri) {
  for (Point p : {tri.a, tri.b, tri.c}) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::DegenerateTriangle, "vertex coordinates must be finite");
    }
  }
  const double twice_area =
      (tri.b.x - tri.a.x) * (tri.c.y - tri.a.y) - (tri.c.x - tri.a.x) * (tri.b.y - tri.a.y);
  const double scale = triangle_scale(tri);
  if (!(std::abs(twice_area) > 1e-12 * scale * scale)) {
    throw Error(ErrorCode::DegenerateTriangle, "vertices are collinear");
  }
}

AffineMap map_to_unit(const Triangle& tri) {
  validate_triangle(tri);
  // Columns (b - a) and (c - a) send e1, e2 to the triangle; invert that.
  const AffineMap from_unit{tri.b.x - tri.a.x, tri.c.x - tri.a.x,
                            tri.b.y - tri.a.y, tri.c.y - tri.a.y,
                            tri.a.x,           tri.a.y};
  return invert(from_unit);
}

Point apply_point(const AffineMap& m, Point p) {
  return {m.m11 * p.x + m.m12 * p.y + m.tx, m.m21 * p.x + m.m22 * p.y + m.ty};
}

AffineMap invert(const AffineMap& m) {
  const double det = m.det();
  const double scale = std::max({std::abs(m.m11), std::abs(m.m12), std::abs(m.m21),
                                 std::abs(m.m22)});
  if (!(std::abs(det) > 1e-14 * scale * scale) || !std::isfinite(det)) {
    throw Error(ErrorCode::SingularMap, "affine map is not invertible");
  }
  AffineMap inv;
  inv.m11 = m.m22 / det;
  inv.m12 = -m.m12 / det;
  inv.m21 = -m.m21 / det;
  inv.m22 = m.m11 / det;
  inv.tx = -(inv.m11 * m.tx + inv.m12 * m.ty);
  inv.ty = -(inv.m21 * m.tx + inv.m22 * m.ty);
  return inv;
}

Slope apply_slope(const AffineMap& m, Slope slope) {
  const double scale = std::max({std::abs(m.m11), std::abs(m.m12), std::abs(m.m21),
                                 std::abs(m.m22)});
  if (!(std::abs(m.det()) > 1e-14 * scale * scale)) {
    throw Error(ErrorCode::SingularMap, "affine map is not invertible");
  }
  double dx = 0.0;
  double dy = 1.0;
  if (slope.is_finite()) {
    dx = 1.0;
    dy = slope.value();
  }
  const double out_x = m.m11 * dx + m.m12 * dy;
  const double out_y = m.m21 * dx + m.m22 * dy;
  const double magnitude = std::hypot(out_x, out_y);
  if (std::abs(out_x) <= 1e-15 * magnitude) return Slope::vertical();
  return Slope::finite(out_y / out_x);
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  AffineMap out;
  out.m11 = outer.m11 * inner.m11 + outer.m12 * inner.m21;
  out.m12 = outer.m11 * inner.m12 + outer.m12 * inner.m22;
  out.m21 = outer.m21 * inner.m11 + outer.m22 * inner.m21;
  out.m22 = outer.m21 * inner.m12 + outer.m22 * inner.m22;
  out.tx = outer.m11 * inner.tx + outer.m12 * inner.ty + outer.tx;
  out.ty = outer.m21 * inner.tx + outer.m22 * inner.ty + outer.ty;
  return out;
}

bool in_unit_interior(Point p) {
  return p.x > 0.0 && p.y > 0.0 && p.x + p.y < 1.0 && p.x < 1.0 && p.y < 1.0;
}

}  // namespace inellipse
