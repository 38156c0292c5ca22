#include "inellipse/triangle_solver.hpp"

#include <cmath>

#include "inellipse/affine.hpp"
#include "inellipse/boundary_solver.hpp"
#include "inellipse/error.hpp"
#include "inellipse/point_slope_solver.hpp"
#include "inellipse/two_point_solver.hpp"

namespace inellipse {

namespace {

Point interior_to_unit(const AffineMap& to_unit, Point p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw Error(ErrorCode::NotInterior, "query point must be finite");
  }
  const Point u = apply_point(to_unit, p);
  if (!in_unit_interior(u)) {
    throw Error(ErrorCode::NotInterior, "query point is not strictly inside the triangle");
  }
  return u;
}

}  // namespace

WorldEllipse to_world(const Triangle& tri, const EllipseParam& param,
                      std::array<double, 2> residuals) {
  const AffineMap from_unit = invert(map_to_unit(tri));
  const TangencyTriple unit = tangency_points(param);
  WorldEllipse out;
  out.param = param;
  out.conic = transform_conic(inscribed_conic(param), from_unit);
  out.tangency = {apply_point(from_unit, unit.bottom), apply_point(from_unit, unit.left),
                  apply_point(from_unit, unit.hypotenuse)};
  out.center = apply_point(from_unit, inscribed_center(param));
  out.residuals = residuals;
  return out;
}

SolveReport solve_two_points(const Triangle& tri, Point p1, Point p2, const Tolerances& tol) {
  const AffineMap to_unit = map_to_unit(tri);
  const Point u1 = interior_to_unit(to_unit, p1);
  const Point u2 = interior_to_unit(to_unit, p2);
  const TwoPointResult unit = solve_two_points_unit(u1, u2, tol);

  SolveReport report;
  report.case_tag = unit.pair_case.tag();
  report.unit_points = {u1, u2};
  for (const TwoPointSolution& s : unit.solutions) {
    report.ellipses.push_back(to_world(tri, s.param, s.residuals));
  }
  return report;
}

SolveReport solve_point_slope(const Triangle& tri, Point p, Slope slope, const Tolerances& tol) {
  const AffineMap to_unit = map_to_unit(tri);
  const Point u = interior_to_unit(to_unit, p);
  const Slope unit_slope = apply_slope(to_unit, slope);
  const PointSlopeResult result = solve_point_slope_unit({u, unit_slope}, tol);

  SolveReport report;
  report.unit_points = {u};
  report.unit_slope = unit_slope;
  if (const auto* none = std::get_if<NoSolution>(&result)) {
    report.case_tag = "no_solution:" + vertex_name(none->vertex);
    report.no_solution = none->vertex;
    return report;
  }
  const EllipseParam param = std::get<EllipseParam>(result);
  report.case_tag = "unique";
  report.ellipses.push_back(to_world(tri, param, residual_point_slope(u, unit_slope, param)));
  return report;
}

SolveReport solve_tangency(const Triangle& tri, Point p1, Point p2, const Tolerances& tol) {
  const AffineMap to_unit = map_to_unit(tri);
  const Point u1 = apply_point(to_unit, p1);
  const Point u2 = apply_point(to_unit, p2);
  const SidePoint s1{classify_side(u1, tol), u1};
  const SidePoint s2{classify_side(u2, tol), u2};
  const EllipseParam param = param_from_tangencies(s1, s2, tol);

  SolveReport report;
  report.case_tag = "boundary_unique";
  report.unit_points = {u1, u2};
  WorldEllipse e = to_world(tri, param, {});
  e.residuals = {normalized_residual(e.conic, p1), normalized_residual(e.conic, p2)};
  report.ellipses.push_back(e);
  return report;
}

}  // namespace inellipse
