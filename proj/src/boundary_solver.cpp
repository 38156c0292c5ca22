#include "inellipse/boundary_solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "inellipse/error.hpp"

namespace inellipse {

namespace {

double side_offset(Side side, Point p) {
  switch (side) {
    case Side::Bottom: return p.y;
    case Side::Left: return p.x;
    case Side::Hypotenuse: return p.x + p.y - 1.0;
  }
  return 0.0;
}

bool near_vertex(Point p, const Tolerances& tol) {
  for (Point v : {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0}}) {
    if (distance(p, v) <= tol.vertex_exclusion) return true;
  }
  return false;
}

// Position along the side, 0 and 1 at its endpoints.
double side_coordinate(Side side, Point p) {
  switch (side) {
    case Side::Bottom: return p.x;
    case Side::Left: return p.y;
    case Side::Hypotenuse: return p.x;
  }
  return 0.0;
}

// Hypotenuse contact (t(1-w), w(1-t)) / (t + (1-2t) w) solved for w given t and x3.
double w_from_hypotenuse(double t, double x3) {
  return t * (1.0 - x3) / (x3 * (1.0 - 2.0 * t) + t);
}

// ... and for t given w and y3.
double t_from_hypotenuse(double w, double y3) {
  return w * (1.0 - y3) / (y3 * (1.0 - 2.0 * w) + w);
}

}  // namespace

void require_on_side(const SidePoint& sp, const Tolerances& tol) {
  const Point p = sp.point;
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw Error(ErrorCode::NotOnSide, "tangency point must be finite");
  }
  if (std::abs(side_offset(sp.side, p)) > tol.side_membership) {
    throw Error(ErrorCode::NotOnSide, "tangency point is off its side");
  }
  if (near_vertex(p, tol)) throw Error(ErrorCode::VertexPoint, "tangency point is a vertex");
  const double s = side_coordinate(sp.side, p);
  if (!(s > 0.0 && s < 1.0)) {
    throw Error(ErrorCode::NotOnSide, "tangency point is outside the open side segment");
  }
}

Side classify_side(Point p, const Tolerances& tol) {
  if (near_vertex(p, tol)) throw Error(ErrorCode::VertexPoint, "tangency point is a vertex");
  for (Side side : {Side::Bottom, Side::Left, Side::Hypotenuse}) {
    if (std::abs(side_offset(side, p)) <= tol.side_membership) {
      require_on_side({side, p}, tol);
      return side;
    }
  }
  throw Error(ErrorCode::NotOnSide, "point is not on the triangle boundary");
}

EllipseParam param_from_tangencies(const SidePoint& s1, const SidePoint& s2,
                                   const Tolerances& tol) {
  if (s1.side == s2.side) throw Error(ErrorCode::SameSide, "tangency points share a side");
  require_on_side(s1, tol);
  require_on_side(s2, tol);

  SidePoint first = s1;
  SidePoint second = s2;
  // Order by enum: Bottom < Left < Hypotenuse.
  if (static_cast<int>(first.side) > static_cast<int>(second.side)) std::swap(first, second);

  EllipseParam param;
  if (first.side == Side::Bottom && second.side == Side::Left) {
    param = {second.point.y, first.point.x};
  } else if (first.side == Side::Bottom) {
    const double t = first.point.x;
    param = {w_from_hypotenuse(t, second.point.x), t};
  } else {
    const double w = first.point.y;
    param = {w, t_from_hypotenuse(w, second.point.y)};
  }
  if (!in_open_square(param)) {
    throw Error(ErrorCode::NotOnSide, "tangency points do not determine an inscribed ellipse");
  }
  return param;
}

}  // namespace inellipse
