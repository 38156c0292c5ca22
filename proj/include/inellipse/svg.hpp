#pragma once

#include <string>
#include <vector>

#include "inellipse/geometry.hpp"
#include "inellipse/triangle_solver.hpp"

namespace inellipse {

/// Standalone SVG 1.1 figure: three triangle edges, one closed path per
/// ellipse (256 samples), query points and tangency points as circles.
std::string render_svg(const Triangle& tri, const std::vector<WorldEllipse>& ellipses,
                       const std::vector<Point>& query_points);

}  // namespace inellipse
