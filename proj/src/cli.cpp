#include "inellipse/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "inellipse/affine.hpp"
#include "inellipse/canonical_json.hpp"
#include "inellipse/error.hpp"
#include "inellipse/oracle.hpp"
#include "inellipse/svg.hpp"
#include "inellipse/triangle_solver.hpp"

namespace inellipse::cli {

namespace {

using nlohmann::json;

enum class Command { TwoPoints, PointSlope, Tangency };

struct Options {
  std::string input = "-";
  std::optional<std::string> svg;
  bool check = false;
  std::optional<std::size_t> grid;
  std::optional<double> tol;
  bool raw = false;
};

struct Query {
  Triangle tri;
  Point p1, p2;
  Slope slope = Slope::vertical();
  Tolerances tol;
  std::optional<std::string> svg;
  std::size_t grid = 256;
};

[[noreturn]] void bad_input(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) bad_input(where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad_input(where + " must be finite");
  return d;
}

Point point(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) bad_input(where + " must be an [x, y] pair");
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad_input(where + " is missing \"" + key + "\"");
  return obj.at(key);
}

const char* variant_key(Command c) {
  switch (c) {
    case Command::TwoPoints: return "two_points";
    case Command::PointSlope: return "point_slope";
    case Command::Tangency: return "boundary_tangency";
  }
  return "";
}

void apply_tolerance_overrides(const json& t, Tolerances& tol) {
  if (t.is_number()) {
    tol.residual = number(t, "options.tolerance");
    return;
  }
  if (!t.is_object()) bad_input("options.tolerance must be a number or an object");
  const std::pair<const char*, double*> fields[] = {
      {"residual", &tol.residual},
      {"classification", &tol.classification},
      {"excluded_slope", &tol.excluded_slope},
      {"side_membership", &tol.side_membership},
      {"vertex_exclusion", &tol.vertex_exclusion},
      {"t0_gate", &tol.t0_gate},
      {"near_double_root", &tol.near_double_root},
  };
  for (const auto& [key, item] : t.items()) {
    bool known = false;
    for (const auto& [name, slot] : fields) {
      if (key == name) {
        *slot = number(item, "options.tolerance." + key);
        if (*slot <= 0.0) bad_input("options.tolerance." + key + " must be positive");
        known = true;
      }
    }
    if (!known) bad_input("unknown tolerance \"" + key + "\"");
  }
}

Query parse_query(const json& doc, Command cmd) {
  if (!doc.is_object()) bad_input("query document must be a JSON object");
  Query q;
  const json& tri = member(doc, "triangle", "document");
  if (!tri.is_array() || tri.size() != 3) bad_input("triangle must list three vertices");
  q.tri = {point(tri[0], "triangle[0]"), point(tri[1], "triangle[1]"),
           point(tri[2], "triangle[2]")};
  validate_triangle(q.tri);

  const json& query = member(doc, "query", "document");
  if (!query.is_object() || query.size() != 1) {
    bad_input("query must contain exactly one of two_points, point_slope, boundary_tangency");
  }
  const std::string key = query.begin().key();
  if (key != variant_key(cmd)) {
    bad_input("query variant \"" + key + "\" does not match the subcommand");
  }
  const json& body = query.begin().value();
  if (cmd == Command::PointSlope) {
    q.p1 = point(member(body, "p", key), key + ".p");
    const json& s = member(body, "slope", key);
    if (s.is_string()) {
      if (s.get<std::string>() != "vertical") bad_input("slope must be a number or \"vertical\"");
      q.slope = Slope::vertical();
    } else {
      q.slope = Slope::finite(number(s, key + ".slope"));
    }
  } else {
    q.p1 = point(member(body, "p1", key), key + ".p1");
    q.p2 = point(member(body, "p2", key), key + ".p2");
  }

  if (doc.contains("options")) {
    const json& opts = doc.at("options");
    if (!opts.is_object()) bad_input("options must be an object");
    if (opts.contains("tolerance")) apply_tolerance_overrides(opts.at("tolerance"), q.tol);
    if (opts.contains("svg")) {
      if (!opts.at("svg").is_string()) bad_input("options.svg must be a path string");
      q.svg = opts.at("svg").get<std::string>();
    }
    if (opts.contains("grid_n")) {
      if (!opts.at("grid_n").is_number_unsigned()) bad_input("options.grid_n must be a count");
      q.grid = opts.at("grid_n").get<std::size_t>();
    }
  }
  return q;
}

json pair_json(Point p) { return json::array({p.x, p.y}); }

json coefficients(const ConicCoeffs& c, bool raw) {
  std::array<double, 6> v{c.a, c.b, 2.0 * c.c, c.d, c.e, c.f};
  if (!raw) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    // Largest magnitude becomes 1 and x^2 gets a positive coefficient.
    const double s = (v[0] < 0.0 ? -1.0 : 1.0) / m;
    for (double& x : v) x *= s;
  }
  return json(v);
}

json ellipse_json(const WorldEllipse& e, bool raw) {
  json tangents = json::array();
  for (const Point& p : e.tangency) tangents.push_back(pair_json(p));
  return json{{"w", e.param.w},
              {"t", e.param.t},
              {"coefficients", coefficients(e.conic, raw)},
              {"tangent_points", tangents},
              {"center", pair_json(e.center)},
              {"residuals", json::array({e.residuals[0], e.residuals[1]})}};
}

json oracle_check(Command cmd, const Query& q, const SolveReport& report) {
  json block;
  json inscribed = json::array();
  for (const WorldEllipse& e : report.ellipses) {
    inscribed.push_back(verify_inscribed(e.conic, q.tri).pass);
  }
  block["inscribed"] = inscribed;
  if (cmd == Command::Tangency) {
    block["agree"] = std::all_of(inscribed.begin(), inscribed.end(),
                                 [](const json& b) { return b.get<bool>(); });
    return block;
  }

  OracleOptions opts;
  opts.grid_n = q.grid;
  const OracleResult found =
      cmd == Command::TwoPoints
          ? brute_force_two_points(report.unit_points[0], report.unit_points[1], opts)
          : brute_force_point_slope(report.unit_points[0], *report.unit_slope, opts);
  std::vector<EllipseParam> solved;
  for (const WorldEllipse& e : report.ellipses) solved.push_back(e.param);
  const MatchResult m = match_params(solved, found.params, 1e-6);

  json params = json::array();
  for (const EllipseParam& p : found.params) params.push_back(json{{"w", p.w}, {"t", p.t}});
  block["grid_n"] = q.grid;
  block["oracle_params"] = params;
  block["oracle_count"] = found.params.size();
  block["solver_count"] = solved.size();
  block["seeds"] = found.seeds;
  block["non_converged"] = found.non_converged;
  block["max_param_distance"] = m.max_distance;
  block["agree"] = m.matched && std::all_of(inscribed.begin(), inscribed.end(),
                                            [](const json& b) { return b.get<bool>(); });
  return block;
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) bad_input("cannot open input file " + path);
    buf << file.rdbuf();
  }
  return buf.str();
}

int execute(Command cmd, const Options& o, std::istream& in, std::ostream& out) {
  const json doc = json::parse(read_input(o.input, in));
  Query q = parse_query(doc, cmd);
  if (o.tol) q.tol.residual = *o.tol;
  if (o.grid) q.grid = *o.grid;
  if (o.svg) q.svg = o.svg;
  if (q.grid < 64) bad_input("grid must be at least 64");

  SolveReport report;
  switch (cmd) {
    case Command::TwoPoints: report = solve_two_points(q.tri, q.p1, q.p2, q.tol); break;
    case Command::PointSlope: report = solve_point_slope(q.tri, q.p1, q.slope, q.tol); break;
    case Command::Tangency: report = solve_tangency(q.tri, q.p1, q.p2, q.tol); break;
  }

  json result;
  result["case"] = report.case_tag;
  result["ellipses"] = json::array();
  for (const WorldEllipse& e : report.ellipses) result["ellipses"].push_back(ellipse_json(e, o.raw));
  if (o.check) result["oracle_check"] = oracle_check(cmd, q, report);

  if (q.svg) {
    std::vector<Point> marks{q.p1};
    if (cmd != Command::PointSlope) marks.push_back(q.p2);
    std::ofstream file(*q.svg, std::ios::binary);
    if (!file) bad_input("cannot write SVG file " + *q.svg);
    file << render_svg(q.tri, report.ellipses, marks);
  }

  out << to_canonical_json(result) << '\n';
  return report.no_solution ? kNoSolution : kSolved;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Ellipses inscribed in a triangle", "inellipse"};
  app.require_subcommand(1);
  Options o;
  const std::pair<Command, std::pair<const char*, const char*>> commands[] = {
      {Command::TwoPoints, {"two-points", "ellipses through two interior points"}},
      {Command::PointSlope, {"point-slope", "ellipse through a point with a given tangent slope"}},
      {Command::Tangency, {"tangency", "ellipse touching two sides at given points"}},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, text] : commands) {
    CLI::App* sub = app.add_subcommand(text.first, text.second);
    sub->add_option("input", o.input, "query JSON file, or - for stdin");
    sub->add_option("--svg", o.svg, "also write an SVG figure to this path");
    sub->add_flag("--check", o.check, "compare against the brute-force oracle");
    sub->add_option("--grid", o.grid, "oracle grid size (default 256)");
    sub->add_option("--tol", o.tol, "residual tolerance (default 1e-9)");
    sub->add_flag("--raw", o.raw, "print coefficients without normalization");
    subs.emplace_back(cmd, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSolved;
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kInputError;
  }

  try {
    for (const auto& [cmd, sub] : subs) {
      if (sub->parsed()) return execute(cmd, o, in, out);
    }
    err << "error: no subcommand\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << one_line(e.what()) << '\n';
  } catch (const Error& e) {
    err << "error: " << one_line(e.what()) << '\n';
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << '\n';
  }
  return kInputError;
}

}  // namespace inellipse::cli
