#pragma once

// Independent numerical witness. Nothing here calls the closed-form solvers:
// the residual systems are re-evaluated from scratch and solved by grid search
// plus damped Newton.

#include <array>
#include <cstddef>
#include <vector>

#include "inellipse/conic.hpp"
#include "inellipse/execution.hpp"
#include "inellipse/geometry.hpp"
#include "inellipse/unit_kernel.hpp"

namespace inellipse {

struct SideCheck {
  /// |beta^2 - 4 alpha gamma| of the conic restricted to the side, relative to
  /// the squared sum of term magnitudes.
  double discriminant_residual = 0.0;
  /// Double-root parameter along the side, 0 at its first vertex.
  double parameter = 0.0;
  Point contact;
  bool inside_segment = false;
};

struct VerificationReport {
  /// Sides ab, ac, bc.
  std::array<SideCheck, 3> sides;
  bool pass = false;
};

/// Throws Error(NotAnEllipse).
VerificationReport verify_inscribed(const ConicCoeffs& conic, const Triangle& tri,
                                    double tol = 1e-9);

struct OracleOptions {
  std::size_t grid_n = 256;
  int max_iterations = 50;
  /// Accepted roots satisfy max |normalized residual| below this.
  double accept_residual = 1e-12;
  double dedupe_radius = 1e-8;
  /// Roots closer than this to the edge of the square are limits, not ellipses.
  double boundary_margin = 1e-9;
  /// Restarts from every seed with the known roots deflated out.
  int deflation_passes = 3;
  Execution execution = Execution::Parallel;
};

struct OracleResult {
  /// Sorted by (t, w).
  std::vector<EllipseParam> params;
  std::size_t seeds = 0;
  /// Seeds whose undeflated Newton run did not reach accept_residual.
  std::size_t non_converged = 0;
};

/// Both points inside the unit triangle and distinct; grid_n >= 64.
OracleResult brute_force_two_points(Point p1, Point p2, const OracleOptions& opts = {});

OracleResult brute_force_point_slope(Point p, Slope slope, const OracleOptions& opts = {});

struct MatchResult {
  bool matched = false;
  /// Largest distance between matched params (infinite on a size mismatch).
  double max_distance = 0.0;
};

/// Greedy nearest-neighbour 1-1 matching of two parameter sets.
MatchResult match_params(const std::vector<EllipseParam>& a, const std::vector<EllipseParam>& b,
                         double tol);

/// Term-normalized residuals of the two-point conditions at `param`.
std::array<double, 2> oracle_residual_two_points(Point p1, Point p2, const EllipseParam& param);
std::array<double, 2> oracle_residual_point_slope(Point p, Slope slope,
                                                  const EllipseParam& param);

/// Summed squared normalized residuals on the Chebyshev grid, row-major in w.
/// Exposed for benchmarking; both execution modes return identical values.
std::vector<double> residual_grid_two_points(Point p1, Point p2, std::size_t grid_n,
                                             Execution exec);

}  // namespace inellipse
