#pragma once

namespace inellipse {

// Exact-zero conditions of the case analysis become tolerance bands in
// floating point. All of them live here and are passed explicitly.
struct Tolerances {
  // Normalized residual accepted for a solution of the defining system.
  double residual = 1e-9;
  // Vertex-line determinants and the J band, relative to the coordinate scale.
  double classification = 1e-10;
  // |r - vertex slope| < excluded_slope * (1 + |r|) means "no ellipse".
  double excluded_slope = 1e-9;
  // Absolute distance from a side's supporting line.
  double side_membership = 1e-10;
  // Minimum distance of a tangency point from a triangle vertex.
  double vertex_exclusion = 1e-8;
  // Denominator of t0 below this (times coordinate scale) means t0 is absent.
  double t0_gate = 1e-12;
  // Below (near_double_root * scale)^2 the discriminant of R is treated as
  // a double-root neighbourhood.
  double near_double_root = 1e-8;
};

}  // namespace inellipse
