#include "inellipse/point_slope_solver.hpp"

#include <algorithm>
#include <cmath>

#include "inellipse/affine.hpp"
#include "inellipse/error.hpp"

namespace inellipse {

namespace {

void require_interior(Point p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !in_unit_interior(p)) {
    throw Error(ErrorCode::NotInterior, "point is not strictly inside the unit triangle");
  }
}

double normalized3(double t1, double t2, double t3) {
  const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
  return scale == 0.0 ? 0.0 : (t1 + t2 + t3) / scale;
}

}  // namespace

SlopeRationals slope_rationals(Point p, double r) {
  require_interior(p);
  const double x = p.x;
  const double y = p.y;
  SlopeRationals out;
  out.qw = (x * x - x * x * x) * r * r + 2.0 * y * x * x * r + y - y * y - x * y * y;
  out.qt = (x - x * x * y - x * x) * r * r + 2.0 * x * y * y * r + y * y - y * y * y;
  const double r0_den = x * (2.0 * x + y - 2.0);
  if (r0_den != 0.0) out.r0 = y * (2.0 * x + y - 1.0) / r0_den;
  return out;
}

std::array<Slope, 3> vertex_slopes(Point p) {
  require_interior(p);
  return {Slope::finite(p.y / p.x), Slope::finite(p.y / (p.x - 1.0)),
          Slope::finite((p.y - 1.0) / p.x)};
}

PointSlopeResult solve_point_slope_unit(const PointSlopeQuery& query, const Tolerances& tol) {
  const Point p = query.p;
  require_interior(p);
  const double x = p.x;
  const double y = p.y;
  const double inner = 1.0 - x - y;

  if (query.slope.is_vertical()) {
    // Limit r -> +-infinity of the finite-slope closed form.
    return EllipseParam{inner / (1.0 - x), x * inner / (1.0 - x * (1.0 + y))};
  }

  const double r = query.slope.value();
  if (!std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "slope must be finite");

  const std::array<Slope, 3> excluded = vertex_slopes(p);
  const std::array<Vertex, 3> vertices{Vertex::Origin, Vertex::Right, Vertex::Top};
  std::size_t nearest = 0;
  double nearest_gap = INFINITY;
  for (std::size_t i = 0; i < 3; ++i) {
    const double gap = std::abs(r - excluded[i].value()) / (1.0 + std::abs(r));
    if (gap < tol.excluded_slope) return NoSolution{vertices[i]};
    if (gap < nearest_gap) {
      nearest_gap = gap;
      nearest = i;
    }
  }

  const SlopeRationals rat = slope_rationals(p, r);
  const double numerator = inner * (r * x - y) * (r * x - y);
  const EllipseParam param{numerator / rat.qw, numerator / rat.qt};
  // Only reachable through underflow right next to an excluded slope.
  if (!in_open_square(param)) return NoSolution{vertices[nearest]};
  return param;
}

std::array<double, 2> residual_point_slope(Point p, Slope slope, const EllipseParam& param) {
  const double x = p.x;
  const double y = p.y;
  const double w = param.w;
  const double t = param.t;
  const double q0 = (x - t) * (x - t) + 4.0 * t * (1.0 - t) * x * y;
  const double on_curve =
      normalized3(q0 * w * w, 2.0 * t * y * (2.0 * t * x - t - x) * w, t * t * y * y);
  double slope_row = 0.0;
  if (slope.is_vertical()) {
    // Coefficient of r in the finite-slope row: the dQ/dy = 0 condition.
    slope_row = normalized3((2.0 * t * t - 2.0 * t) * x * w * w,
                            -t * ((2.0 * t - 1.0) * x - t) * w, -y * t * t);
  } else {
    const double r = slope.value();
    const double a = (2.0 * r * t * t - 2.0 * r * t - 1.0) * x + 2.0 * t * (t - 1.0) * y + t;
    const double b = (2.0 * t - 1.0) * y + r * (2.0 * t - 1.0) * x - r * t;
    slope_row = normalized3(a * w * w, -t * b * w, -r * y * t * t);
  }
  return {on_curve, slope_row};
}

}  // namespace inellipse
