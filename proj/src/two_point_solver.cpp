#include "inellipse/two_point_solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "inellipse/affine.hpp"
#include "inellipse/error.hpp"

namespace inellipse {

std::string vertex_name(Vertex v) {
  switch (v) {
    case Vertex::Origin: return "origin";
    case Vertex::Right: return "right";
    case Vertex::Top: return "top";
  }
  return "unknown";
}

std::string PairCase::tag() const {
  switch (kind) {
    case Kind::Generic: return "generic_4";
    case Kind::GenericJZero: return "generic_j_zero";
    case Kind::VertexLine: return "vertex_line:" + vertex_name(vertex);
  }
  return "unknown";
}

namespace {

struct PointRow {
  double value;
  double d_dw;
  double d_dt;
  double term_scale;
};

// q(t) w^2 + 2 t y ((2x - 1) t - x) w + t^2 y^2 and its partials.
PointRow point_row(Point p, double w, double t) {
  const double x = p.x;
  const double y = p.y;
  const double q = (x - t) * (x - t) + 4.0 * x * y * t * (1.0 - t);
  const double dq = -2.0 * (x - t) + 4.0 * x * y * (1.0 - 2.0 * t);
  const double lin = 2.0 * t * y * ((2.0 * x - 1.0) * t - x);
  const double dlin = 2.0 * y * (2.0 * (2.0 * x - 1.0) * t - x);
  const double t1 = q * w * w;
  const double t2 = lin * w;
  const double t3 = t * t * y * y;
  return {t1 + t2 + t3, 2.0 * q * w + lin, dq * w * w + dlin * w + 2.0 * t * y * y,
          std::max({std::abs(t1), std::abs(t2), std::abs(t3)})};
}

double normalized(const PointRow& row) {
  return row.term_scale == 0.0 ? 0.0 : row.value / row.term_scale;
}

double max_residual(Point p1, Point p2, const EllipseParam& param) {
  const auto r = residual_system3(p1, p2, param);
  return std::max(std::abs(r[0]), std::abs(r[1]));
}

// A few Newton steps on the two point conditions; a step is kept only if it lowers the
// normalized residual, so a good closed-form root is never made worse.
EllipseParam polish(Point p1, Point p2, EllipseParam param) {
  double best = max_residual(p1, p2, param);
  for (int iter = 0; iter < 6 && best > 1e-15; ++iter) {
    const PointRow r1 = point_row(p1, param.w, param.t);
    const PointRow r2 = point_row(p2, param.w, param.t);
    const double det = r1.d_dw * r2.d_dt - r1.d_dt * r2.d_dw;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dw = -(r1.value * r2.d_dt - r1.d_dt * r2.value) / det;
    const double dt = -(r1.d_dw * r2.value - r1.value * r2.d_dw) / det;
    // A polishing step stays local; a long jump would land on another root.
    if (std::abs(dw) > 1e-3 * std::min(param.w, 1.0 - param.w) ||
        std::abs(dt) > 1e-3 * std::min(param.t, 1.0 - param.t)) {
      break;
    }
    const EllipseParam next{param.w + dw, param.t + dt};
    if (!std::isfinite(next.w) || !std::isfinite(next.t)) break;
    const double res = max_residual(p1, p2, next);
    if (!(res < best)) break;
    best = res;
    param = next;
  }
  return param;
}

void append_roots(const QuadraticPoly& poly, std::vector<double>& out) {
  for (const Root& r : solve_quadratic(poly)) out.push_back(r.value);
}

bool near(double a, double b, double gap) { return std::abs(a - b) <= gap; }

// Candidate (w, t) pairs for a pair satisfying x1 != x2 and y1 != y2.
std::vector<EllipseParam> candidates(Point p1, Point p2, const PairCase& pc,
                                     const Tolerances& tol) {
  std::vector<double> ts;
  std::vector<EllipseParam> direct;
  const QuadraticPoly r = poly_R(p1, p2);
  const QuadraticPoly s = poly_S(p1, p2);
  // Roots closer than this to a known spurious root are the spurious root.
  const double spurious_gap = std::sqrt(tol.classification);

  auto add_t0_family = [&](Point a, Point b) {
    PairInvariants inv = pair_invariants(a, b, tol);
    if (inv.d_origin < 0.0) {
      std::swap(a, b);
      inv = pair_invariants(a, b, tol);
    }
    if (!inv.t0) return false;
    const double t0 = *inv.t0;
    // g(w) = q1(t0) w^2 + 2 t0 y1 ((2 x1 - 1) t0 - x1) w + t0^2 y1^2
    const QuadraticPoly g{poly_q(a)(t0), 2.0 * t0 * a.y * ((2.0 * a.x - 1.0) * t0 - a.x),
                          t0 * t0 * a.y * a.y};
    for (const Root& root : solve_quadratic(g)) direct.push_back({root.value, t0});
    return true;
  };

  switch (pc.kind) {
    case PairCase::Kind::Generic: {
      append_roots(s, ts);
      const double r_scale = std::max({std::abs(r.c2), std::abs(r.c1), std::abs(r.c0)});
      const double gate = tol.near_double_root * r_scale;
      const PairInvariants inv = pair_invariants(p1, p2, tol);
      // Close to the J = 0 manifold the roots of R merge and B/C loses all
      // precision; seed from the t0 family instead and let Newton separate.
      const bool near_j_manifold = r.discriminant() < gate * gate &&
                                   std::abs(inv.j) < std::abs(inv.d_vertex01);
      if (!(near_j_manifold && add_t0_family(p1, p2))) append_roots(r, ts);
      break;
    }
    case PairCase::Kind::GenericJZero: {
      append_roots(s, ts);
      if (!add_t0_family(p1, p2)) {
        throw Error(ErrorCode::SolutionCountMismatch, "t0 undefined on the J = 0 branch");
      }
      break;
    }
    case PairCase::Kind::VertexLine: {
      std::vector<double> r_roots;
      std::vector<double> s_roots;
      append_roots(r, r_roots);
      append_roots(s, s_roots);
      if (pc.vertex == Vertex::Top) {
        // R has a double root at x1 / (1 - y1), where w = 1.
        const double spurious = p1.x / (1.0 - p1.y);
        std::erase_if(r_roots, [&](double t) { return near(t, spurious, spurious_gap); });
      }
      ts = r_roots;
      ts.insert(ts.end(), s_roots.begin(), s_roots.end());
      if (pc.vertex == Vertex::Origin) {
        std::erase_if(ts, [&](double t) { return near(t, 0.0, spurious_gap); });
      } else if (pc.vertex == Vertex::Right) {
        std::erase_if(ts, [&](double t) { return near(t, 1.0, spurious_gap); });
      }
      break;
    }
  }

  std::vector<EllipseParam> out = direct;
  for (double t : ts) {
    if (!(t > 0.0 && t < 1.0)) continue;
    out.push_back({w_from_t(p1, p2, t), t});
  }
  return out;
}

void sort_solutions(std::vector<TwoPointSolution>& solutions) {
  std::sort(solutions.begin(), solutions.end(),
            [](const TwoPointSolution& a, const TwoPointSolution& b) {
              return a.param.t != b.param.t ? a.param.t < b.param.t : a.param.w < b.param.w;
            });
}

TwoPointResult solve_core(Point p1, Point p2, const PairCase& pc, const Tolerances& tol) {
  TwoPointResult result;
  result.pair_case = pc;
  for (EllipseParam param : candidates(p1, p2, pc, tol)) {
    if (!std::isfinite(param.w) || !std::isfinite(param.t)) continue;
    param = polish(p1, p2, param);
    if (!in_open_square(param)) continue;
    if (max_residual(p1, p2, param) >= tol.residual) continue;
    // Relative to the distance from the edge: roots near a corner can be
    // legitimately distinct at 1e-13.
    const double gap_w = 1e-9 * std::min(param.w, 1.0 - param.w);
    const double gap_t = 1e-9 * std::min(param.t, 1.0 - param.t);
    const bool duplicate = std::any_of(result.solutions.begin(), result.solutions.end(),
                                       [&](const TwoPointSolution& s) {
                                         return std::abs(s.param.w - param.w) <= gap_w &&
                                                std::abs(s.param.t - param.t) <= gap_t;
                                       });
    if (duplicate) continue;
    result.solutions.push_back({param, inscribed_conic(param), tangency_points(param),
                                residual_system3(p1, p2, param)});
  }
  sort_solutions(result.solutions);
  return result;
}

// Relabelling of the unit triangle that swaps vertex `v` with the origin.
// Points are carried through barycentric coordinates (origin, right, top),
// so a relabelled point loses nothing beyond the rounding of 1 - x - y.
struct VertexFrame {
  int v = 0;  // 0 origin, 1 right, 2 top

  // Index of sigma(k) for the transposition (0 v).
  int image(int k) const { return k == 0 ? v : (k == v ? 0 : k); }

  Point to_frame(Point p) const {
    const std::array<double, 3> bary{1.0 - p.x - p.y, p.x, p.y};
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k) out[image(k)] = bary[k];
    return {out[1], out[2]};
  }

  // Original (w, t) from a solution in the relabelled frame. The contact
  // point on the side opposite vertex m has barycentrics `side(m)`.
  EllipseParam from_frame(const EllipseParam& e) const {
    const double den = e.t + (1.0 - 2.0 * e.t) * e.w;
    const auto side = [&](int m) -> std::array<double, 3> {
      if (m == 2) return {1.0 - e.t, e.t, 0.0};
      if (m == 1) return {1.0 - e.w, 0.0, e.w};
      return {0.0, e.t * (1.0 - e.w) / den, e.w * (1.0 - e.t) / den};
    };
    // Bottom side is opposite the top vertex, left side opposite the right.
    const double t = side(image(2))[image(1)];
    const double w = side(image(1))[image(2)];
    return {w, t};
  }
};

// Vertex moved to the origin before solving: the one whose line through the
// pair is closest to vanishing, among frames where both coordinates differ.
VertexFrame choose_frame(Point p1, Point p2, const PairInvariants& inv, double gate) {
  const double d[3] = {std::abs(inv.d_origin), std::abs(inv.d_vertex10),
                       std::abs(inv.d_vertex01)};
  VertexFrame best;
  double best_d = INFINITY;
  for (int v = 0; v < 3; ++v) {
    const VertexFrame f{v};
    const Point a = f.to_frame(p1);
    const Point b = f.to_frame(p2);
    if (std::abs(a.x - b.x) < gate || std::abs(a.y - b.y) < gate) continue;
    if (d[v] < best_d) {
      best_d = d[v];
      best = f;
    }
  }
  return best;
}

}  // namespace

PairCase classify_pair(Point p1, Point p2, const Tolerances& tol) {
  const PairInvariants inv = pair_invariants(p1, p2, tol);
  const double scale = std::max({std::abs(p1.x), std::abs(p1.y), std::abs(p2.x), std::abs(p2.y)});
  const double band = tol.classification * scale;
  int vanishing = 0;
  PairCase pc = PairCase::generic();
  if (std::abs(inv.d_origin) < band) {
    ++vanishing;
    pc = PairCase::vertex_line(Vertex::Origin);
  }
  if (std::abs(inv.d_vertex10) < band) {
    ++vanishing;
    pc = PairCase::vertex_line(Vertex::Right);
  }
  if (std::abs(inv.d_vertex01) < band) {
    ++vanishing;
    pc = PairCase::vertex_line(Vertex::Top);
  }
  if (vanishing > 1) {
    throw Error(ErrorCode::AmbiguousClassification,
                "points lie on lines through two different vertices");
  }
  if (vanishing == 0 && std::abs(inv.j) < band) pc = PairCase::generic_j_zero();
  return pc;
}

std::array<double, 2> residual_system3(Point p1, Point p2, const EllipseParam& param) {
  return {normalized(point_row(p1, param.w, param.t)),
          normalized(point_row(p2, param.w, param.t))};
}

TwoPointResult solve_two_points_unit(Point p1, Point p2, const Tolerances& tol) {
  const PairCase pc = classify_pair(p1, p2, tol);
  const VertexFrame frame = choose_frame(p1, p2, pair_invariants(p1, p2, tol), tol.classification);

  TwoPointResult result;
  if (frame.v == 0) {
    result = solve_core(p1, p2, pc, tol);
  } else {
    const Point c1 = frame.to_frame(p1);
    const Point c2 = frame.to_frame(p2);
    const TwoPointResult image = solve_core(c1, c2, classify_pair(c1, c2, tol), tol);
    result.pair_case = pc;
    for (const TwoPointSolution& s : image.solutions) {
      const EllipseParam param = polish(p1, p2, frame.from_frame(s.param));
      if (!in_open_square(param)) continue;
      result.solutions.push_back({param, inscribed_conic(param), tangency_points(param),
                                  residual_system3(p1, p2, param)});
    }
    sort_solutions(result.solutions);
  }

  if (static_cast<int>(result.solutions.size()) != pc.expected_count()) {
    throw Error(ErrorCode::SolutionCountMismatch,
                "found " + std::to_string(result.solutions.size()) + " ellipses, expected " +
                    std::to_string(pc.expected_count()) + " (" + pc.tag() + ")");
  }
  return result;
}

std::vector<PairSolveOutcome> solve_two_points_batch(std::span<const std::pair<Point, Point>> pairs,
                                                     const Tolerances& tol, Execution exec) {
  std::vector<PairSolveOutcome> out(pairs.size());
  auto solve_one = [&](std::size_t i) {
    try {
      out[i].result = solve_two_points_unit(pairs[i].first, pairs[i].second, tol);
    } catch (const std::exception& ex) {
      out[i].error = ex.what();
    }
  };
  const auto n = static_cast<long>(pairs.size());
  if (exec == Execution::Serial) {
    for (long i = 0; i < n; ++i) solve_one(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) solve_one(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace inellipse
