#include "inellipse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "inellipse/affine.hpp"
#include "inellipse/error.hpp"

namespace inellipse {

namespace {

// Value with its partials in w and t.
struct Dual {
  double v = 0.0, dw = 0.0, dt = 0.0;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.dw + b.dw, a.dt + b.dt}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.dw - b.dw, a.dt - b.dt}; }
Dual operator*(Dual a, Dual b) {
  return {a.v * b.v, a.dw * b.v + a.v * b.dw, a.dt * b.v + a.v * b.dt};
}
Dual operator*(double s, Dual a) { return {s * a.v, s * a.dw, s * a.dt}; }
Dual operator+(Dual a, double s) { return {a.v + s, a.dw, a.dt}; }

double value_of(double x) { return x; }

// One residual row as a sum of terms, so it can be normalized by the largest.
template <typename T, std::size_t N>
struct Terms {
  std::array<T, N> term;

  T sum() const {
    T s = term[0];
    for (std::size_t i = 1; i < N; ++i) s = s + term[i];
    return s;
  }
  double scale() const {
    double m = 0.0;
    for (const T& x : term) m = std::max(m, std::abs(value_of(x)));
    return m;
  }
  double normalized() const {
    const double m = scale();
    return m == 0.0 ? 0.0 : value_of(sum()) / m;
  }
};

// q(t) w^2 + 2 t y ((2x - 1) t - x) w + t^2 y^2
template <typename T>
Terms<T, 3> through_point(Point p, T w, T t) {
  const double x = p.x;
  const double y = p.y;
  const T xt = (-1.0 * t) + x;
  const T q = xt * xt + (4.0 * x * y) * (t * ((-1.0 * t) + 1.0));
  const T lin = (2.0 * y) * (t * (((2.0 * x - 1.0) * t) + (-x)));
  return {{q * w * w, lin * w, (y * y) * (t * t)}};
}

// Directional derivative of the family conic along (dx, dy) at p.
template <typename T>
Terms<T, 6> tangent_row(Point p, double dx, double dy, T w, T t) {
  const double x = p.x;
  const double y = p.y;
  // Cross coefficient -2 w t (2wt - 2w - 2t + 1).
  const T k = (-2.0) * (w * t) * ((2.0 * (w * t)) - (2.0 * w) - (2.0 * t) + 1.0);
  // grad = (2 w^2 x + k y - 2 w^2 t,  2 t^2 y + k x - 2 t^2 w)
  return {{(2.0 * x * dx) * (w * w), (y * dx) * k, (-2.0 * dx) * (w * w * t),
           (2.0 * y * dy) * (t * t), (x * dy) * k, (-2.0 * dy) * (t * t * w)}};
}

struct TwoPointSystem {
  Point p1, p2;

  std::array<double, 2> normalized(double w, double t) const {
    return {through_point(p1, w, t).normalized(), through_point(p2, w, t).normalized()};
  }
  std::array<Dual, 2> raw(double w, double t) const {
    const Dual dw{w, 1.0, 0.0};
    const Dual dt{t, 0.0, 1.0};
    return {through_point(p1, dw, dt).sum(), through_point(p2, dw, dt).sum()};
  }
};

struct PointSlopeSystem {
  Point p;
  double dx, dy;

  std::array<double, 2> normalized(double w, double t) const {
    return {through_point(p, w, t).normalized(), tangent_row(p, dx, dy, w, t).normalized()};
  }
  std::array<Dual, 2> raw(double w, double t) const {
    const Dual dw{w, 1.0, 0.0};
    const Dual dt{t, 0.0, 1.0};
    return {through_point(p, dw, dt).sum(), tangent_row(p, dx, dy, dw, dt).sum()};
  }
};

PointSlopeSystem make_point_slope(Point p, Slope slope) {
  // The gradient is orthogonal to the tangent direction (1, r) or (0, 1).
  if (slope.is_vertical()) return {p, 0.0, 1.0};
  return {p, 1.0, slope.value()};
}

double merit(const std::array<double, 2>& n) { return n[0] * n[0] + n[1] * n[1]; }

// Deflation factor prod_k (1 / |x - r_k|^2 + 1): infinite at known roots,
// tending to 1 away from them, so roots of m F are the unknown roots of F.
Dual deflation(double w, double t, const std::vector<EllipseParam>& known) {
  Dual m{1.0, 0.0, 0.0};
  for (const EllipseParam& r : known) {
    const double ew = w - r.w;
    const double et = t - r.t;
    const double d2 = ew * ew + et * et;
    const double inv4 = 1.0 / (d2 * d2);
    m = m * Dual{1.0 / d2 + 1.0, -2.0 * ew * inv4, -2.0 * et * inv4};
  }
  return m;
}

bool converged(const std::array<double, 2>& n, double tol) {
  return std::max(std::abs(n[0]), std::abs(n[1])) < tol;
}

// Damped Newton on m F with step halving on the merit m^2 |F_normalized|^2;
// m = 1 when `known` is empty.
template <typename System>
std::optional<EllipseParam> newton(const System& sys, EllipseParam start,
                                   const OracleOptions& opts,
                                   const std::vector<EllipseParam>& known) {
  double w = start.w;
  double t = start.t;
  const auto scaled_merit = [&](double mw, double mt, const std::array<double, 2>& n) {
    const double m = deflation(mw, mt, known).v;
    return m * m * merit(n);
  };
  std::array<double, 2> n = sys.normalized(w, t);
  double f = scaled_merit(w, t, n);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (converged(n, opts.accept_residual)) break;
    const std::array<Dual, 2> raw = sys.raw(w, t);
    const Dual m = deflation(w, t, known);
    const Dual g0 = m * raw[0];
    const Dual g1 = m * raw[1];
    const double det = g0.dw * g1.dt - g0.dt * g1.dw;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double step_w = (g0.v * g1.dt - g0.dt * g1.v) / det;
    const double step_t = (g0.dw * g1.v - g0.v * g1.dw) / det;
    double lambda = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 40; ++halving, lambda *= 0.5) {
      const double nw = w - lambda * step_w;
      const double nt = t - lambda * step_t;
      const std::array<double, 2> nn = sys.normalized(nw, nt);
      const double nf = scaled_merit(nw, nt, nn);
      if (nf < f) {
        w = nw;
        t = nt;
        n = nn;
        f = nf;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (!converged(n, opts.accept_residual)) return std::nullopt;
  return EllipseParam{w, t};
}

// Chebyshev nodes on (0, 1): dense near the edges, where roots crowd.
std::vector<double> grid_nodes(std::size_t n) {
  std::vector<double> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    nodes[i] = 0.5 * (1.0 - std::cos(theta));
  }
  return nodes;
}

template <typename System>
std::vector<double> residual_grid(const System& sys, std::size_t n, Execution exec) {
  std::vector<double> grid(n * n);
  const std::vector<double> nodes = grid_nodes(n);
  const auto row = [&](std::size_t i) {
    const double w = nodes[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double t = nodes[j];
      grid[i * n + j] = merit(sys.normalized(w, t));
    }
  };
  if (exec == Execution::Parallel) {
    const auto rows = static_cast<long>(n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) row(i);
  }
  return grid;
}

std::vector<EllipseParam> basin_seeds(const std::vector<double>& grid, std::size_t n) {
  std::vector<double> sorted = grid;
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  const double threshold = 10.0 * *mid;
  const std::vector<double> nodes = grid_nodes(n);

  std::vector<EllipseParam> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = grid[i * n + j];
      if (!(v < threshold)) continue;
      bool strict_min = true;
      for (int di = -1; di <= 1 && strict_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const long ni = static_cast<long>(i) + di;
          const long nj = static_cast<long>(j) + dj;
          if (ni < 0 || nj < 0 || ni >= static_cast<long>(n) || nj >= static_cast<long>(n)) {
            continue;
          }
          if (!(v < grid[static_cast<std::size_t>(ni) * n + static_cast<std::size_t>(nj)])) {
            strict_min = false;
            break;
          }
        }
      }
      if (strict_min) {
        seeds.push_back({nodes[i], nodes[j]});
      }
    }
  }
  return seeds;
}

template <typename System>
std::vector<std::optional<EllipseParam>> refine_all(const System& sys,
                                                   const std::vector<EllipseParam>& seeds,
                                                   const OracleOptions& opts,
                                                   const std::vector<EllipseParam>& known) {
  std::vector<std::optional<EllipseParam>> refined(seeds.size());
  if (opts.execution == Execution::Parallel) {
    const auto count = static_cast<long>(seeds.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long k = 0; k < count; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      refined[idx] = newton(sys, seeds[idx], opts, known);
    }
  } else {
    for (std::size_t k = 0; k < seeds.size(); ++k) refined[k] = newton(sys, seeds[k], opts, known);
  }
  return refined;
}

bool param_less(const EllipseParam& a, const EllipseParam& b) {
  return a.t != b.t ? a.t < b.t : a.w < b.w;
}

// Appends in-square candidates that are not within the dedupe radius of a
// known root. Returns the number appended.
std::size_t merge_roots(std::vector<EllipseParam> candidates, const OracleOptions& opts,
                        std::vector<EllipseParam>& roots) {
  const double m = opts.boundary_margin;
  std::erase_if(candidates, [&](const EllipseParam& r) {
    return !(r.w > m && r.w < 1.0 - m && r.t > m && r.t < 1.0 - m);
  });
  std::sort(candidates.begin(), candidates.end(), param_less);
  std::size_t added = 0;
  for (const EllipseParam& c : candidates) {
    const bool dup = std::any_of(roots.begin(), roots.end(), [&](const EllipseParam& k) {
      return std::hypot(k.w - c.w, k.t - c.t) <= opts.dedupe_radius;
    });
    if (!dup) {
      roots.push_back(c);
      ++added;
    }
  }
  return added;
}

template <typename System>
OracleResult grid_and_refine(const System& sys, const OracleOptions& opts) {
  if (opts.grid_n < 64) throw Error(ErrorCode::InvalidArgument, "grid_n must be at least 64");
  const std::vector<double> grid = residual_grid(sys, opts.grid_n, opts.execution);
  const std::vector<EllipseParam> seeds = basin_seeds(grid, opts.grid_n);

  OracleResult out;
  out.seeds = seeds.size();
  std::vector<EllipseParam> roots;
  const std::vector<std::optional<EllipseParam>> first = refine_all(sys, seeds, opts, {});
  std::vector<EllipseParam> candidates;
  for (const auto& r : first) {
    if (r) {
      candidates.push_back(*r);
    } else {
      ++out.non_converged;
    }
  }
  std::size_t added = merge_roots(candidates, opts, roots);

  // Roots closer together than the grid spacing share a basin; restart from
  // every seed with the known roots deflated until nothing new appears.
  for (int pass = 0; pass < opts.deflation_passes && added > 0; ++pass) {
    std::vector<EllipseParam> restart = seeds;
    for (const EllipseParam& r : roots) {
      // Offset shrinks with the distance to the nearest edge so restarts stay inside.
      const double e = 0.25 * std::min({r.w, r.t, 1.0 - r.w, 1.0 - r.t, 4e-3});
      for (const double d : {-e, e}) {
        restart.push_back({r.w + d, r.t});
        restart.push_back({r.w, r.t + d});
        restart.push_back({r.w + d, r.t + d});
        restart.push_back({r.w + d, r.t - d});
      }
    }
    // The (0,0) corner is a limit of the residual surface; deflate it too.
    std::vector<EllipseParam> known = roots;
    known.push_back({0.0, 0.0});
    candidates.clear();
    for (const auto& r : refine_all(sys, restart, opts, known)) {
      if (r) candidates.push_back(*r);
    }
    added = merge_roots(candidates, opts, roots);
  }

  std::sort(roots.begin(), roots.end(), param_less);
  out.params = roots;
  return out;
}

void require_unit_interior(Point p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !in_unit_interior(p)) {
    throw Error(ErrorCode::NotInterior, "point is not strictly inside the unit triangle");
  }
}

void require_distinct_interior(Point p1, Point p2) {
  require_unit_interior(p1);
  require_unit_interior(p2);
  if (distance(p1, p2) <= 1e-14) throw Error(ErrorCode::CoincidentPoints, "points coincide");
}

SideCheck check_side(const ConicCoeffs& q, Point from, Point to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double x = from.x;
  const double y = from.y;
  // Restriction alpha s^2 + beta s + gamma, with the magnitude of every term
  // kept so the discriminant is judged against its own rounding scale.
  const double alpha_terms[3] = {q.a * dx * dx, q.b * dy * dy, 2.0 * q.c * dx * dy};
  const double beta_terms[5] = {2.0 * q.a * x * dx, 2.0 * q.b * y * dy,
                                2.0 * q.c * (x * dy + y * dx), q.d * dx, q.e * dy};
  const double gamma_terms[6] = {q.a * x * x, q.b * y * y, 2.0 * q.c * x * y,
                                 q.d * x,     q.e * y,     q.f};
  double alpha = 0.0, alpha_mag = 0.0, beta = 0.0, beta_mag = 0.0, gamma = 0.0, gamma_mag = 0.0;
  for (double v : alpha_terms) alpha += v, alpha_mag += std::abs(v);
  for (double v : beta_terms) beta += v, beta_mag += std::abs(v);
  for (double v : gamma_terms) gamma += v, gamma_mag += std::abs(v);

  SideCheck out;
  out.discriminant_residual = INFINITY;
  if (alpha == 0.0) return out;
  const double denom = beta_mag * beta_mag + 4.0 * alpha_mag * gamma_mag;
  out.discriminant_residual = std::abs(beta * beta - 4.0 * alpha * gamma) / denom;
  out.parameter = -beta / (2.0 * alpha);
  out.contact = {x + out.parameter * dx, y + out.parameter * dy};
  out.inside_segment = out.parameter > 0.0 && out.parameter < 1.0;
  return out;
}

}  // namespace

VerificationReport verify_inscribed(const ConicCoeffs& conic, const Triangle& tri, double tol) {
  if (!is_real_ellipse(conic)) throw Error(ErrorCode::NotAnEllipse, "conic is not a real ellipse");
  VerificationReport report;
  report.sides = {check_side(conic, tri.a, tri.b), check_side(conic, tri.a, tri.c),
                  check_side(conic, tri.b, tri.c)};
  report.pass = std::all_of(report.sides.begin(), report.sides.end(), [&](const SideCheck& s) {
    return s.discriminant_residual < tol && s.inside_segment;
  });
  return report;
}

OracleResult brute_force_two_points(Point p1, Point p2, const OracleOptions& opts) {
  require_distinct_interior(p1, p2);
  return grid_and_refine(TwoPointSystem{p1, p2}, opts);
}

OracleResult brute_force_point_slope(Point p, Slope slope, const OracleOptions& opts) {
  require_unit_interior(p);
  if (slope.is_finite() && !std::isfinite(slope.value())) {
    throw Error(ErrorCode::InvalidArgument, "slope must be finite");
  }
  return grid_and_refine(make_point_slope(p, slope), opts);
}

MatchResult match_params(const std::vector<EllipseParam>& a, const std::vector<EllipseParam>& b,
                         double tol) {
  if (a.size() != b.size()) return {false, INFINITY};
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const EllipseParam& p : a) {
    std::size_t best = b.size();
    double best_d = INFINITY;
    for (std::size_t k = 0; k < b.size(); ++k) {
      const double d = std::hypot(p.w - b[k].w, p.t - b[k].t);
      if (!used[k] && d < best_d) {
        best_d = d;
        best = k;
      }
    }
    if (best == b.size()) return {false, INFINITY};
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return {worst <= tol, worst};
}

std::array<double, 2> oracle_residual_two_points(Point p1, Point p2, const EllipseParam& param) {
  return TwoPointSystem{p1, p2}.normalized(param.w, param.t);
}

std::array<double, 2> oracle_residual_point_slope(Point p, Slope slope,
                                                  const EllipseParam& param) {
  return make_point_slope(p, slope).normalized(param.w, param.t);
}

std::vector<double> residual_grid_two_points(Point p1, Point p2, std::size_t grid_n,
                                             Execution exec) {
  require_distinct_interior(p1, p2);
  return residual_grid(TwoPointSystem{p1, p2}, grid_n, exec);
}

}  // namespace inellipse
