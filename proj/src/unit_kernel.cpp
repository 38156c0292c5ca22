#include "inellipse/unit_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "inellipse/affine.hpp"
#include "inellipse/error.hpp"

namespace inellipse {

namespace {

void require_param(const EllipseParam& param) {
  if (!in_open_square(param)) {
    throw Error(ErrorCode::OutOfDomain, "(w, t) must lie in the open unit square");
  }
}

void require_interior(Point p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !in_unit_interior(p)) {
    throw Error(ErrorCode::NotInterior, "point is not strictly inside the unit triangle");
  }
}

double clamped_sqrt(double radicand) {
  if (radicand < 0.0 && radicand > -1e-14) radicand = 0.0;
  return std::sqrt(radicand);
}

}  // namespace

bool in_open_square(const EllipseParam& param) {
  return param.w > 0.0 && param.w < 1.0 && param.t > 0.0 && param.t < 1.0;
}

ConicCoeffs inscribed_conic(const EllipseParam& param) {
  require_param(param);
  const double w = param.w;
  const double t = param.t;
  ConicCoeffs q;
  q.a = w * w;
  q.b = t * t;
  q.c = -w * t * (2.0 * w * t - 2.0 * w - 2.0 * t + 1.0);
  q.d = -2.0 * w * w * t;
  q.e = -2.0 * t * t * w;
  q.f = t * t * w * w;
  return q;
}

TangencyTriple tangency_points(const EllipseParam& param) {
  require_param(param);
  const double w = param.w;
  const double t = param.t;
  const double denom = t + (1.0 - 2.0 * t) * w;
  return {{t, 0.0}, {0.0, w}, {t * (1.0 - w) / denom, w * (1.0 - t) / denom}};
}

Point inscribed_center(const EllipseParam& param) {
  require_param(param);
  const double s = param.w + (1.0 - param.w) * param.t;
  return {0.5 * param.t / s, 0.5 * param.w / s};
}

std::vector<Root> solve_quadratic(const QuadraticPoly& q) {
  const double scale = std::max({std::abs(q.c2), std::abs(q.c1), std::abs(q.c0)});
  if (scale == 0.0) throw Error(ErrorCode::ZeroPolynomial, "all coefficients vanish");

  if (std::abs(q.c2) <= 1e-14 * scale) {
    if (std::abs(q.c1) <= 1e-14 * scale) return {};
    return {{-q.c0 / q.c1, 1}};
  }

  const double disc = q.discriminant();
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() *
                          (q.c1 * q.c1 + std::abs(4.0 * q.c2 * q.c0));
  if (std::abs(disc) <= rounding) return {{-q.c1 / (2.0 * q.c2), 2}};
  if (disc < 0.0) return {};

  // Larger-magnitude root first, the other from the product of the roots.
  const double big = -0.5 * (q.c1 + std::copysign(std::sqrt(disc), q.c1));
  double r1 = big / q.c2;
  double r2 = q.c0 / big;
  if (r1 > r2) std::swap(r1, r2);
  return {{r1, 1}, {r2, 1}};
}

void require_interior_pair(Point p1, Point p2) {
  require_interior(p1);
  require_interior(p2);
  if (distance(p1, p2) <= 1e-14) {
    throw Error(ErrorCode::CoincidentPoints, "the two points coincide");
  }
}

PairInvariants pair_invariants(Point p1, Point p2, const Tolerances& tol) {
  require_interior_pair(p1, p2);
  const double x1 = p1.x, y1 = p1.y, x2 = p2.x, y2 = p2.y;
  PairInvariants inv;
  inv.d_origin = x2 * y1 - x1 * y2;
  inv.d_vertex10 = (1.0 - x2) * y1 - (1.0 - x1) * y2;
  inv.d_vertex01 = x2 * (1.0 - y1) - x1 * (1.0 - y2);
  inv.j = x2 * (1.0 - x2 - y2) * y1 * y1 - x1 * (1.0 - x1 - y1) * y2 * y2;
  inv.a1 = clamped_sqrt(x1 * (1.0 - x1 - y1));
  inv.a2 = clamped_sqrt(x2 * (1.0 - x2 - y2));
  const double denom = 2.0 * x2 * y1 - 2.0 * x1 * y2 + y2 - y1;
  const double coord_scale = std::max({std::abs(x1), std::abs(y1), std::abs(x2), std::abs(y2)});
  if (std::abs(denom) >= tol.t0_gate * coord_scale) inv.t0 = inv.d_origin / denom;
  return inv;
}

QuadraticPoly poly_q(Point p) {
  require_interior(p);
  // (x - t)^2 + 4xy t(1 - t) = (1 - 4xy) t^2 - 2x(1 - 2y) t + x^2
  return {1.0 - 4.0 * p.x * p.y, -2.0 * p.x * (1.0 - 2.0 * p.y), p.x * p.x};
}

QuadraticPoly poly_B(Point p1, Point p2) {
  require_interior_pair(p1, p2);
  const QuadraticPoly q1 = poly_q(p1);
  const QuadraticPoly q2 = poly_q(p2);
  const double k1 = p1.y * p1.y;
  const double k2 = p2.y * p2.y;
  return {k1 * q2.c2 - k2 * q1.c2, k1 * q2.c1 - k2 * q1.c1, k1 * q2.c0 - k2 * q1.c0};
}

CubicPoly poly_C(Point p1, Point p2) {
  require_interior_pair(p1, p2);
  const QuadraticPoly q1 = poly_q(p1);
  const QuadraticPoly q2 = poly_q(p2);
  // y_i (x_i + (1 - 2 x_i) t) = l0 + l1 t
  const double l0_1 = p1.y * p1.x;
  const double l1_1 = p1.y * (1.0 - 2.0 * p1.x);
  const double l0_2 = p2.y * p2.x;
  const double l1_2 = p2.y * (1.0 - 2.0 * p2.x);
  // (l0_1 + l1_1 t) q2(t) - (l0_2 + l1_2 t) q1(t)
  CubicPoly c;
  c.c3 = l1_1 * q2.c2 - l1_2 * q1.c2;
  c.c2 = l1_1 * q2.c1 + l0_1 * q2.c2 - (l1_2 * q1.c1 + l0_2 * q1.c2);
  c.c1 = l1_1 * q2.c0 + l0_1 * q2.c1 - (l1_2 * q1.c0 + l0_2 * q1.c1);
  c.c0 = l0_1 * q2.c0 - l0_2 * q1.c0;
  return c;
}

namespace {

struct RSParts {
  double base2;  // t^2 coefficient without the A1 A2 term
  double base1;  // t coefficient without the A1 A2 term
  double cross;  // 8 y1 y2 A1 A2
  double c0;     // -(x2 y1 - x1 y2)^2
};

RSParts rs_parts(Point p1, Point p2) {
  const PairInvariants inv = pair_invariants(p1, p2);
  const double x1 = p1.x, y1 = p1.y, x2 = p2.x, y2 = p2.y;
  const double y12 = y1 * y2;
  // t^2: 4 y1 y2 (x1 y2 + x2 y1 + 2 x1 x2 - x2 - x1) - (y2 - y1)^2 (+/-) 8 y1 y2 A1 A2
  const double s2 = x1 * y2 + x2 * y1 + 2.0 * x1 * x2 - x2 - x1;
  const double base2 = 4.0 * y12 * s2 - (y2 - y1) * (y2 - y1);
  // t^1: 2 (x2 y1^2 + x1 y2^2 - y1 y2 (2 x1 y2 + 2 x2 y1 + 4 x1 x2 - x1 - x2)) (-/+) 8 y1 y2 A1 A2
  const double s1 = 2.0 * x1 * y2 + 2.0 * x2 * y1 + 4.0 * x1 * x2 - x1 - x2;
  const double base1 = 2.0 * (x2 * y1 * y1 + x1 * y2 * y2 - y12 * s1);
  // t^0: -(x2 y1 - x1 y2)^2
  return {base2, base1, 8.0 * y12 * inv.a1 * inv.a2, -inv.d_origin * inv.d_origin};
}

}  // namespace

QuadraticPoly poly_R(Point p1, Point p2) {
  const RSParts parts = rs_parts(p1, p2);
  return {parts.base2 + parts.cross, parts.base1 - parts.cross, parts.c0};
}

QuadraticPoly poly_S(Point p1, Point p2) {
  const RSParts parts = rs_parts(p1, p2);
  return {parts.base2 - parts.cross, parts.base1 + parts.cross, parts.c0};
}

double w_from_t(Point p1, Point p2, double t) {
  const QuadraticPoly b = poly_B(p1, p2);
  const CubicPoly c = poly_C(p1, p2);
  return 0.5 * t * b(t) / c(t);
}

}  // namespace inellipse
