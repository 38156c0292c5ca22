#pragma once

#include <cmath>
#include <optional>

namespace inellipse {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Slope of a tangent line: either a finite dy/dx or a vertical line.
class Slope {
 public:
  static Slope finite(double r) { return Slope(r); }
  static Slope vertical() { return Slope(); }

  bool is_vertical() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  /// Throws std::bad_optional_access on a vertical slope.
  double value() const { return value_.value(); }

  friend bool operator==(const Slope&, const Slope&) = default;

 private:
  Slope() = default;
  explicit Slope(double r) : value_(r) {}

  std::optional<double> value_;
};

/// p -> L p + (tx, ty) with L = [[m11, m12], [m21, m22]].
struct AffineMap {
  double m11 = 1.0, m12 = 0.0;
  double m21 = 0.0, m22 = 1.0;
  double tx = 0.0, ty = 0.0;

  static AffineMap identity() { return {}; }
  double det() const { return m11 * m22 - m12 * m21; }
};

/// Vertices in user order. The unit triangle is a=(0,0), b=(1,0), c=(0,1).
struct Triangle {
  Point a;
  Point b;
  Point c;

  static Triangle unit() { return {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}; }
};

/// The three vertices of the unit triangle, named after their position.
enum class Vertex { Origin, Right, Top };

}  // namespace inellipse
