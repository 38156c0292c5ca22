#pragma once

#include <array>

#include "inellipse/geometry.hpp"

namespace inellipse {

/// Coefficients of  a x^2 + b y^2 + 2 c xy + d x + e y + f = 0.
///
/// `c` is HALF the xy coefficient. A conic is a projective object: k * (a..f)
/// with k != 0 names the same curve, so compare with equal_up_to_scale().
struct ConicCoeffs {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;

  std::array<double, 6> as_array() const { return {a, b, c, d, e, f}; }
  /// Largest coefficient magnitude.
  double scale() const;
  /// Divided by the largest-magnitude coefficient (that entry becomes +1).
  ConicCoeffs normalized() const;
};

bool equal_up_to_scale(const ConicCoeffs& lhs, const ConicCoeffs& rhs, double rel_tol = 1e-9);

double evaluate(const ConicCoeffs& conic, Point p);

/// |evaluate(conic, p)| divided by the sum of the magnitudes of its six terms.
double normalized_residual(const ConicCoeffs& conic, Point p);

/// Gradient of the quadratic form at p: (dQ/dx, dQ/dy).
Point gradient(const ConicCoeffs& conic, Point p);

bool is_real_ellipse(const ConicCoeffs& conic);

/// Implicit-derivative slope -Qx/Qy at a point on the curve.
/// Throws Error(SingularPoint) when both partials vanish.
Slope slope_at(const ConicCoeffs& conic, Point p);

/// Stationary point of the quadratic form. Throws Error(DegenerateConic).
Point conic_center(const ConicCoeffs& conic);

/// Image of the conic under `map`: p lies on the result iff map^-1(p) lies on
/// `conic`. Throws Error(SingularMap).
ConicCoeffs transform_conic(const ConicCoeffs& conic, const AffineMap& map);

/// Semi-axes and orientation of a real ellipse (for plotting).
struct EllipseAxes {
  Point center;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  /// Angle of the major axis from +x, radians.
  double angle = 0.0;
};

/// Throws Error(NotAnEllipse) when is_real_ellipse() fails.
EllipseAxes principal_axes(const ConicCoeffs& conic);

}  // namespace inellipse
