#include "inellipse/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "inellipse/conic.hpp"

namespace inellipse {

namespace {

constexpr int kSamples = 256;
constexpr double kCanvas = 512.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// World box -> canvas pixels with y pointing up.
struct Frame {
  double min_x, max_y, scale, pad;

  double px(double x) const { return pad + (x - min_x) * scale; }
  double py(double y) const { return pad + (max_y - y) * scale; }
};

Frame make_frame(const Triangle& tri) {
  const double min_x = std::min({tri.a.x, tri.b.x, tri.c.x});
  const double max_x = std::max({tri.a.x, tri.b.x, tri.c.x});
  const double min_y = std::min({tri.a.y, tri.b.y, tri.c.y});
  const double max_y = std::max({tri.a.y, tri.b.y, tri.c.y});
  const double extent = std::max(max_x - min_x, max_y - min_y);
  const double pad = 24.0;
  return {min_x, max_y, (kCanvas - 2.0 * pad) / extent, pad};
}

std::string circle(const Frame& f, Point p, const char* cls, const char* fill, double r) {
  const std::string fill_s(fill);
  return "  <circle class=\"" + std::string(cls) + "\" cx=\"" + num(f.px(p.x)) + "\" cy=\"" +
         num(f.py(p.y)) + "\" r=\"" + num(r) + "\" fill=\"" + fill_s + "\"/>\n";
}

}  // namespace

std::string render_svg(const Triangle& tri, const std::vector<WorldEllipse>& ellipses,
                       const std::vector<Point>& query_points) {
  const Frame f = make_frame(tri);
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kCanvas) +
       "\" height=\"" + num(kCanvas) + "\" viewBox=\"0 0 " + num(kCanvas) + " " + num(kCanvas) +
       "\">\n";
  s += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const Point v[3] = {tri.a, tri.b, tri.c};
  for (int i = 0; i < 3; ++i) {
    const Point p = v[i];
    const Point q = v[(i + 1) % 3];
    s += "  <line class=\"edge\" x1=\"" + num(f.px(p.x)) + "\" y1=\"" + num(f.py(p.y)) +
         "\" x2=\"" + num(f.px(q.x)) + "\" y2=\"" + num(f.py(q.y)) +
         "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }

  for (const WorldEllipse& e : ellipses) {
    const EllipseAxes ax = principal_axes(e.conic);
    const double c = std::cos(ax.angle);
    const double sn = std::sin(ax.angle);
    std::string d;
    for (int k = 0; k < kSamples; ++k) {
      const double th = 2.0 * std::numbers::pi * k / kSamples;
      const double u = ax.semi_major * std::cos(th);
      const double w = ax.semi_minor * std::sin(th);
      const Point p{ax.center.x + u * c - w * sn, ax.center.y + u * sn + w * c};
      d += (k == 0 ? "M" : " L") + num(f.px(p.x)) + "," + num(f.py(p.y));
    }
    d += " Z";
    s += "  <path class=\"ellipse\" d=\"" + d +
         "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\"/>\n";
  }

  for (const WorldEllipse& e : ellipses) {
    for (const Point& p : e.tangency) s += circle(f, p, "tangency", "seagreen", 2.5);
  }
  for (const Point& p : query_points) s += circle(f, p, "query", "crimson", 3.5);
  s += "</svg>\n";
  return s;
}

}  // namespace inellipse
