#include "inellipse/conic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "inellipse/affine.hpp"
#include "inellipse/error.hpp"

namespace inellipse {

namespace {

// Homogeneous symmetric matrix of the conic:
//   [ a    c    d/2 ]
//   [ c    b    e/2 ]
//   [ d/2  e/2  f   ]
using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 homogeneous(const ConicCoeffs& q) {
  return {{{q.a, q.c, 0.5 * q.d}, {q.c, q.b, 0.5 * q.e}, {0.5 * q.d, 0.5 * q.e, q.f}}};
}

Mat3 multiply(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += lhs[i][k] * rhs[k][j];
      out[i][j] = acc;
    }
  }
  return out;
}

Mat3 transpose(const Mat3& m) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = m[j][i];
  return out;
}

}  // namespace

double ConicCoeffs::scale() const {
  double s = 0.0;
  for (double v : as_array()) s = std::max(s, std::abs(v));
  return s;
}

ConicCoeffs ConicCoeffs::normalized() const {
  const auto v = as_array();
  const auto it = std::max_element(v.begin(), v.end(),
                                   [](double l, double r) { return std::abs(l) < std::abs(r); });
  const double k = *it;
  if (k == 0.0) return *this;
  return {a / k, b / k, c / k, d / k, e / k, f / k};
}

bool equal_up_to_scale(const ConicCoeffs& lhs, const ConicCoeffs& rhs, double rel_tol) {
  const double sl = lhs.scale();
  const double sr = rhs.scale();
  if (sl == 0.0 || sr == 0.0) return sl == sr;
  const auto l = lhs.as_array();
  const auto r = rhs.as_array();
  // Align the global sign through the inner product; picking "the" largest
  // entry is ambiguous when two entries tie in magnitude.
  double dot = 0.0;
  for (std::size_t i = 0; i < 6; ++i) dot += l[i] * r[i];
  const double sign = dot < 0.0 ? -1.0 : 1.0;
  for (std::size_t i = 0; i < 6; ++i) {
    if (std::abs(l[i] / sl - sign * r[i] / sr) > rel_tol) return false;
  }
  return true;
}

double evaluate(const ConicCoeffs& q, Point p) {
  return q.a * p.x * p.x + q.b * p.y * p.y + 2.0 * q.c * p.x * p.y + q.d * p.x + q.e * p.y + q.f;
}

double normalized_residual(const ConicCoeffs& q, Point p) {
  const double terms = std::abs(q.a * p.x * p.x) + std::abs(q.b * p.y * p.y) +
                       std::abs(2.0 * q.c * p.x * p.y) + std::abs(q.d * p.x) +
                       std::abs(q.e * p.y) + std::abs(q.f);
  if (terms == 0.0) return 0.0;
  return std::abs(evaluate(q, p)) / terms;
}

Point gradient(const ConicCoeffs& q, Point p) {
  return {2.0 * q.a * p.x + 2.0 * q.c * p.y + q.d, 2.0 * q.b * p.y + 2.0 * q.c * p.x + q.e};
}

bool is_real_ellipse(const ConicCoeffs& conic) {
  ConicCoeffs q = conic;
  if (q.a < 0.0) q = {-q.a, -q.b, -q.c, -q.d, -q.e, -q.f};
  if (!(q.a > 0.0 && q.b > 0.0)) return false;
  if (!(q.a * q.b - q.c * q.c > 0.0)) return false;
  const double nontrivial = q.a * q.e * q.e + q.b * q.d * q.d + 4.0 * q.f * q.c * q.c -
                            2.0 * q.c * q.d * q.e - 4.0 * q.a * q.b * q.f;
  return nontrivial > 0.0;
}

Slope slope_at(const ConicCoeffs& conic, Point p) {
  const Point g = gradient(conic, p);
  const double scale = conic.scale() * std::max({1.0, std::abs(p.x), std::abs(p.y)});
  const double numerator = -g.x;
  const double denominator = g.y;
  if (std::abs(denominator) < 1e-12 * scale) {
    if (std::abs(numerator) >= 1e-6 * scale) return Slope::vertical();
    throw Error(ErrorCode::SingularPoint, "gradient vanishes at the query point");
  }
  return Slope::finite(numerator / denominator);
}

Point conic_center(const ConicCoeffs& q) {
  const double det = q.a * q.b - q.c * q.c;
  const double mag = std::abs(q.a) + std::abs(q.b) + std::abs(q.c);
  if (mag == 0.0 || std::abs(det) <= 1e-14 * mag * mag) {
    throw Error(ErrorCode::DegenerateConic, "quadratic part is singular");
  }
  // [a c; c b] [x y]^T = -[d/2 e/2]^T
  const double rx = -0.5 * q.d;
  const double ry = -0.5 * q.e;
  return {(rx * q.b - q.c * ry) / det, (q.a * ry - q.c * rx) / det};
}

ConicCoeffs transform_conic(const ConicCoeffs& conic, const AffineMap& map) {
  const AffineMap inv = invert(map);
  const Mat3 h_inv{{{inv.m11, inv.m12, inv.tx}, {inv.m21, inv.m22, inv.ty}, {0.0, 0.0, 1.0}}};
  const Mat3 s = multiply(transpose(h_inv), multiply(homogeneous(conic), h_inv));
  return {s[0][0], s[1][1], 0.5 * (s[0][1] + s[1][0]), s[0][2] + s[2][0], s[1][2] + s[2][1],
          s[2][2]};
}

EllipseAxes principal_axes(const ConicCoeffs& conic) {
  if (!is_real_ellipse(conic)) throw Error(ErrorCode::NotAnEllipse, "conic is not a real ellipse");
  ConicCoeffs q = conic;
  if (q.a < 0.0) q = {-q.a, -q.b, -q.c, -q.d, -q.e, -q.f};
  const Point center = conic_center(q);
  const double level = -evaluate(q, center);
  const double mean = 0.5 * (q.a + q.b);
  const double radius = std::hypot(0.5 * (q.a - q.b), q.c);
  const double lambda_small = mean - radius;
  const double lambda_large = mean + radius;
  // Eigenvector of the larger eigenvalue sits at 0.5*atan2(2c, a-b); the
  // major axis is perpendicular to it.
  const double angle = 0.5 * std::atan2(2.0 * q.c, q.a - q.b) + 0.5 * std::numbers::pi;
  return {center, std::sqrt(level / lambda_small), std::sqrt(level / lambda_large), angle};
}

}  // namespace inellipse
