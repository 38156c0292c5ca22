#pragma once

// The (w, t) family of ellipses inscribed in the unit triangle
// (0,0), (1,0), (0,1), and the polynomials in t used to solve for members of
// that family through two interior points.
//
// For (w, t) in the open unit square the inscribed ellipse is
//
//   w^2 x^2 + t^2 y^2 - 2wt(2wt - 2w - 2t + 1) xy - 2w^2 t x - 2t^2 w y + t^2 w^2 = 0
//
// and touches the bottom side at (t, 0) and the left side at (0, w).

#include <optional>
#include <vector>

#include "inellipse/conic.hpp"
#include "inellipse/geometry.hpp"
#include "inellipse/tolerances.hpp"

namespace inellipse {

/// Member of the inscribed family; both coordinates lie in (0, 1).
struct EllipseParam {
  double w = 0.5;
  double t = 0.5;

  friend bool operator==(const EllipseParam&, const EllipseParam&) = default;
};

bool in_open_square(const EllipseParam& param);

/// Contact points with the bottom side, the left side and the hypotenuse.
struct TangencyTriple {
  Point bottom;
  Point left;
  Point hypotenuse;
};

ConicCoeffs inscribed_conic(const EllipseParam& param);
TangencyTriple tangency_points(const EllipseParam& param);
/// Center (t / 2s, w / 2s) with s = w + (1 - w) t; inside the medial triangle.
Point inscribed_center(const EllipseParam& param);

// ---------------------------------------------------------------------------
// Polynomials in t

struct QuadraticPoly {
  double c2 = 0.0, c1 = 0.0, c0 = 0.0;

  double operator()(double t) const { return (c2 * t + c1) * t + c0; }
  double discriminant() const { return c1 * c1 - 4.0 * c2 * c0; }
  double derivative(double t) const { return 2.0 * c2 * t + c1; }
};

struct CubicPoly {
  double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

  double operator()(double t) const { return ((c3 * t + c2) * t + c1) * t + c0; }
};

struct Root {
  double value = 0.0;
  int multiplicity = 1;
};

/// Real roots in ascending order. A double root is reported once with
/// multiplicity 2. Throws Error(ZeroPolynomial) if every coefficient is zero.
std::vector<Root> solve_quadratic(const QuadraticPoly& q);

/// Determinants, J, A1, A2 and t0 for a pair of interior points.
struct PairInvariants {
  // x2 y1 - x1 y2: zero iff the points are collinear with (0,0).
  double d_origin = 0.0;
  // (1 - x2) y1 - (1 - x1) y2: zero iff collinear with (1,0).
  double d_vertex10 = 0.0;
  // x2 (1 - y1) - x1 (1 - y2): zero iff collinear with (0,1).
  double d_vertex01 = 0.0;
  // J = x2 (1 - x2 - y2) y1^2 - x1 (1 - x1 - y1) y2^2
  double j = 0.0;
  // A_i = sqrt(x_i (1 - x_i - y_i))
  double a1 = 0.0;
  double a2 = 0.0;
  // t0 = d_origin / (2 x2 y1 - 2 x1 y2 + y2 - y1), absent when the
  // denominator vanishes.
  std::optional<double> t0;
};

/// Throws Error(NotInterior) or Error(CoincidentPoints).
void require_interior_pair(Point p1, Point p2);

PairInvariants pair_invariants(Point p1, Point p2, const Tolerances& tol = {});

/// q(t) = (x - t)^2 + 4 x y t (1 - t); positive for every real t.
QuadraticPoly poly_q(Point p);

/// B(t) = y1^2 q2(t) - y2^2 q1(t)
QuadraticPoly poly_B(Point p1, Point p2);
/// C(t) = y1 (x1 + (1 - 2 x1) t) q2(t) - y2 (x2 + (1 - 2 x2) t) q1(t)
CubicPoly poly_C(Point p1, Point p2);

/// The two concave quadratics whose roots in (0,1) are the t-coordinates of
/// the ellipses through both points. R - S = -16 A1 A2 y1 y2 t (1 - t).
QuadraticPoly poly_R(Point p1, Point p2);
QuadraticPoly poly_S(Point p1, Point p2);

/// w coordinate of the solution above a root t of R S: (t/2) B(t) / C(t).
double w_from_t(Point p1, Point p2, double t);

}  // namespace inellipse
