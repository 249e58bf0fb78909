#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hjnet/arc_extension.hpp"
#include "hjnet/aubry.hpp"
#include "hjnet/critical.hpp"
#include "hjnet/dfe.hpp"
#include "hjnet/error.hpp"
#include "hjnet/io.hpp"

namespace hjnet::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Loaded {
  NetworkSpec spec;
  Network network;
};

Loaded load(const std::string& path) {
  NetworkSpec spec = parse_network(read_file(path));
  Network network = build_network(spec);
  return {std::move(spec), std::move(network)};
}

Json tolerances_json(const Tolerances& tol) {
  Json j = Json::object();
  for (const auto& [name, value] : tol.entries()) {
    if (name.rfind("tol_", 0) == 0) {
      j[name] = value;
    } else {
      j[name] = static_cast<std::size_t>(value);
    }
  }
  return j;
}

Json nullable(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

const std::string& arc_name(const Graph& g, ArcId a) { return g.arc(a).name; }
const std::string& vertex_name(const Graph& g, VertexId x) { return g.vertex(x).name; }

Json edge_json(const Graph& g, EdgeId e) {
  const DirectedEdge& d = g.edge(e);
  return Json{{"arc", arc_name(g, d.arc)},
              {"orientation", d.orientation == Orientation::forward ? "forward" : "backward"}};
}

/// Lazily computed critical data shared by the subcommands.
class Context {
 public:
  explicit Context(const Network& network) : network_(network) {}

  const CriticalData& critical() {
    if (!critical_) critical_ = analyze_critical(network_);
    return *critical_;
  }

  double resolve_level(const std::string& text) {
    if (text == "critical") return critical().critical.value;
    char* end = nullptr;
    const double a = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(a)) {
      throw ValidationError("--level: expected a number or 'critical', got '" + text + "'");
    }
    return a;
  }

  bool is_critical(double a) {
    return std::abs(a - critical().critical.value) <= network_.tolerances().level;
  }

 private:
  const Network& network_;
  std::optional<CriticalData> critical_;
};

VertexId lookup_vertex(const Graph& g, const std::string& name) {
  auto x = g.find_vertex(name);
  if (!x) throw ValidationError("unknown vertex '" + name + "'");
  return *x;
}

ArcId lookup_arc(const Graph& g, const std::string& name) {
  auto a = g.find_arc(name);
  if (!a) throw ValidationError("unknown arc '" + name + "'");
  return *a;
}

NetworkPoint make_point(const Graph& g, const std::string& arc, double s) {
  try {
    return NetworkPoint::on_arc(g, lookup_arc(g, arc), s);
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
}

/// "x1" names a vertex, "arc@0.25" a point on an arc.
NetworkPoint parse_point(const Graph& g, const std::string& text) {
  const auto at = text.rfind('@');
  if (at == std::string::npos) return NetworkPoint::at_vertex(lookup_vertex(g, text));
  const std::string arc = text.substr(0, at);
  const std::string param = text.substr(at + 1);
  char* end = nullptr;
  const double s = std::strtod(param.c_str(), &end);
  if (param.empty() || *end != '\0') throw ValidationError("point '" + text + "': bad parameter '" + param + "'");
  return make_point(g, arc, s);
}

Json point_json(const Graph& g, const NetworkPoint& p) {
  if (p.is_vertex()) return Json{{"vertex", vertex_name(g, *p.vertex)}};
  return Json{{"arc", arc_name(g, p.arc)}, {"s", p.s}};
}

FunctionSpec to_function_spec(const Graph& g, const NetworkFunction& nf) {
  FunctionSpec spec;
  spec.level = nf.vertices.level;
  for (std::size_t x = 0; x < g.vertex_count(); ++x) {
    spec.values.emplace_back(vertex_name(g, VertexId{x}), nf.vertices.values[x]);
  }
  for (const auto& [p, value] : nf.points) spec.points.push_back({arc_name(g, p.arc), p.s, value});
  return spec;
}

NetworkFunction from_function_spec(const Network& network, const FunctionSpec& spec) {
  const Graph& g = network.graph();
  VertexFunction u;
  u.level = spec.level;
  u.values.assign(g.vertex_count(), std::numeric_limits<double>::quiet_NaN());
  for (const auto& [name, value] : spec.values) u.values[lookup_vertex(g, name).index] = value;
  for (std::size_t x = 0; x < g.vertex_count(); ++x) {
    if (std::isnan(u.values[x])) {
      throw ValidationError("function file has no value for vertex '" + vertex_name(g, VertexId{x}) + "'");
    }
  }
  std::vector<std::pair<NetworkPoint, double>> points;
  for (const PointValue& p : spec.points) points.emplace_back(make_point(g, p.arc, p.s), p.value);
  return extend_with_points(network, u, points);
}

Json verdict_json(const Graph& g, const NetworkSolutionVerdict& v) {
  Json failures = Json::array();
  for (const SolutionFailure& f : v.failures) {
    Json j{{"kind", f.kind}};
    if (f.vertex) j["vertex"] = vertex_name(g, *f.vertex);
    if (f.arc) {
      j["arc"] = arc_name(g, *f.arc);
      j["s"] = f.s;
    }
    j["amount"] = nullable(f.amount);
    failures.push_back(std::move(j));
  }
  return Json{{"ok", v.ok}, {"failures", std::move(failures)}};
}

Json residual_json(const Graph& g, const NetworkFunction& nf) {
  Json out = Json::array();
  for (const ArcResidual& r : residual_check(nf)) {
    out.push_back({{"arc", arc_name(g, r.arc)},
                   {"max_abs", r.max_abs},
                   {"max_signed", nullable(r.max_signed)},
                   {"samples", r.samples}});
  }
  return out;
}

Json subsolution_json(const Graph& g, const SubsolutionVerdict& v) {
  Json violations = Json::array();
  for (const EdgeViolation& e : v.violations) {
    Json j = edge_json(g, e.edge);
    j["excess"] = e.excess;
    violations.push_back(std::move(j));
  }
  return Json{{"ok", v.ok}, {"violations", std::move(violations)}};
}

Json solution_json(const Graph& g, const SolutionVerdict& v) {
  Json vertices = Json::array();
  for (std::size_t x = 0; x < g.vertex_count(); ++x) {
    Json j{{"vertex", vertex_name(g, VertexId{x})}, {"defect", nullable(v.defect[x])}};
    if (std::isfinite(v.defect[x])) j["achieving"] = edge_json(g, v.achieving[x]);
    vertices.push_back(std::move(j));
  }
  Json failing = Json::array();
  for (VertexId x : v.failing) failing.push_back(vertex_name(g, x));
  return Json{{"ok", v.ok}, {"vertices", std::move(vertices)}, {"failing", std::move(failing)}};
}

void write_csv(std::ostream& out, const Graph& g, const NetworkFunction& nf, std::size_t resolution) {
  out << "arc_id,s,value,branch\n";
  for (const ProfileSample& row : sample(nf, resolution)) {
    out << arc_name(g, row.arc) << ',' << format_double(row.s) << ',' << format_double(row.value) << ','
        << row.tag << '\n';
  }
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const Loaded in = load(path);
  const Network& net = in.network;
  const Graph& g = net.graph();
  Json warnings = Json::array();
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    for (const std::string& w : net.hamiltonian(ArcId{k}).validate(net.tolerances())) {
      warnings.push_back("arc '" + arc_name(g, ArcId{k}) + "': " + w);
    }
  }
  for (const std::string& w : validate_H4(net)) warnings.push_back(w);
  Json closed = Json::array();
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    if (g.is_closed(ArcId{k})) closed.push_back(arc_name(g, ArcId{k}));
  }
  Json report{{"command", "validate"},
              {"ok", true},
              {"vertices", g.vertex_count()},
              {"arcs", g.arc_count()},
              {"closed_arcs", std::move(closed)},
              {"warnings", std::move(warnings)},
              {"tolerances", tolerances_json(net.tolerances())}};
  out << report.dump(2) << '\n';
  return 0;
}

Json arcs_json(const Network& net) {
  const Graph& g = net.graph();
  Json arcs = Json::array();
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const ArcConstants& c = net.constants(ArcId{k});
    Json j{{"id", arc_name(g, ArcId{k})}, {"closed", g.is_closed(ArcId{k})}, {"a_gamma", c.a_gamma}};
    if (c.c_gamma) j["c_gamma"] = *c.c_gamma;
    arcs.push_back(std::move(j));
  }
  return arcs;
}

int cmd_critical(const std::string& path, std::ostream& out) {
  const Loaded in = load(path);
  const CriticalValue c = critical_value(in.network);
  Json report{{"command", "critical"},
              {"critical_value", c.value},
              {"a0", c.a0},
              {"attained_at_a0", std::isnan(c.below)},
              {"below", nullable(c.below)},
              {"cycle_value", c.cycle_value},
              {"probes", c.probes},
              {"arcs", arcs_json(in.network)},
              {"tolerances", tolerances_json(in.network.tolerances())}};
  out << report.dump(2) << '\n';
  return 0;
}

int cmd_aubry(const std::string& path, std::ostream& out) {
  const Loaded in = load(path);
  const Graph& g = in.network.graph();
  const CriticalData data = analyze_critical(in.network);
  const AubryData& A = data.aubry;
  Json edges = Json::array();
  for (EdgeId e : A.edges) edges.push_back(edge_json(g, e));
  Json vertices = Json::array();
  for (VertexId x : A.vertices) vertices.push_back(vertex_name(g, x));
  Json classes = Json::array();
  for (const auto& cls : A.classes) {
    Json c = Json::array();
    for (VertexId x : cls) c.push_back(vertex_name(g, x));
    classes.push_back(std::move(c));
  }
  Json arcs = Json::array();
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    arcs.push_back({{"id", arc_name(g, ArcId{k})},
                    {"in_aubry", A.arcs[k].in_aubry()},
                    {"forward", A.arcs[k].forward},
                    {"backward", A.arcs[k].backward}});
  }
  Json margins = Json::array();
  for (const DirectedEdge& e : g.edges()) {
    Json j = edge_json(g, e.id);
    j["weight"] = data.weights[e.id];
    j["margin"] = nullable(A.edge_margin[e.id.index]);
    margins.push_back(std::move(j));
  }
  Json report{{"command", "aubry"},
              {"critical_value", data.critical.value},
              {"edges", std::move(edges)},
              {"vertices", std::move(vertices)},
              {"static_classes", std::move(classes)},
              {"arcs", std::move(arcs)},
              {"edge_margins", std::move(margins)},
              {"tolerances", tolerances_json(in.network.tolerances())}};
  out << report.dump(2) << '\n';
  return 0;
}

int cmd_distance(const std::string& path, const std::string& level, const std::string& from, const std::string& to,
                 std::ostream& out) {
  const Loaded in = load(path);
  const Graph& g = in.network.graph();
  Context ctx(in.network);
  const double a = ctx.resolve_level(level);
  const NetworkPoint x = parse_point(g, from);
  const NetworkPoint y = parse_point(g, to);
  const double d = intrinsic_distance(in.network, a, x, y);
  Json report{{"command", "distance"},
              {"level", a},
              {"from", point_json(g, x)},
              {"to", point_json(g, y)},
              {"distance", nullable(d)},
              {"tolerances", tolerances_json(in.network.tolerances())}};
  out << report.dump(2) << '\n';
  return 0;
}

int cmd_solve(const std::string& path, const std::string& level, const std::string& trace_path,
              const std::string& out_dir, std::size_t resolution, std::ostream& out, std::ostream& err) {
  const Loaded in = load(path);
  const Network& net = in.network;
  const Graph& g = net.graph();
  const Tolerances& tol = net.tolerances();
  Context ctx(net);
  const double a = ctx.resolve_level(level);
  const TraceSpec trace = parse_trace(read_file(trace_path));
  if (trace.entries.empty()) throw ValidationError("trace has no entries");
  const double c = ctx.critical().critical.value;
  const double declared = trace.level ? *trace.level : c;
  if (std::abs(declared - a) > tol.level) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "trace declares level " << declared << " but --level resolves to " << a;
    throw ValidationError(msg.str());
  }
  if (a < c - tol.level) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "level " << a << " is below the critical value " << c << "; no subsolutions exist";
    throw LevelError(msg.str());
  }

  bool vertices_only = true;
  for (const TraceEntrySpec& e : trace.entries) vertices_only = vertices_only && e.vertex.has_value();

  std::string mode;
  NetworkFunction nf;
  if (vertices_only) {
    Trace t;
    t.level = a;
    for (const TraceEntrySpec& e : trace.entries) t.entries.emplace_back(lookup_vertex(g, *e.vertex), e.value);
    const DistanceTable table = ctx.is_critical(a) ? ctx.critical().table : distance_table(net, a);
    if (ctx.is_critical(a)) t.level = table.level();
    const AdmissibilityVerdict adm = check_admissible(t, table, tol.zero);
    if (!adm.ok) {
      for (const PairViolation& p : adm.violations) {
        err << "inadmissible pair: g(" << vertex_name(g, p.x) << ") - g(" << vertex_name(g, p.y) << ") exceeds S("
            << vertex_name(g, p.y) << ", " << vertex_name(g, p.x) << ") by " << format_double(p.excess) << '\n';
      }
      throw AdmissibilityError("trace is not admissible (" + std::to_string(adm.violations.size()) +
                               " violating pair(s))");
    }
    VertexFunction u;
    if (ctx.is_critical(a)) {
      bool inside = true;
      for (const auto& [y, value] : t.entries) inside = inside && ctx.critical().aubry.contains(y);
      if (inside) {
        mode = "critical";
        u = solve_critical(t, table, ctx.critical().aubry, tol.zero);
      } else {
        mode = "relaxed";
        err << "note: the support leaves the projected Aubry set; returning the maximal subsolution below the "
               "trace (not unique as a solution)\n";
        u = solve_relaxed(t, table);
      }
    } else {
      mode = "supercritical";
      u = solve_supercritical(t, table, c, tol.zero);
    }
    nf = extend_vertex_solution(net, u);
  } else {
    mode = "points";
    PointTrace pt;
    pt.level = a;
    for (const TraceEntrySpec& e : trace.entries) {
      const NetworkPoint p = e.vertex ? NetworkPoint::at_vertex(lookup_vertex(g, *e.vertex))
                                      : make_point(g, e.point->first, e.point->second);
      pt.entries.emplace_back(p, e.value);
    }
    nf = solve_from_points(net, pt);
  }

  const LevelWeights w = compute_weights(net, a);
  const SubsolutionVerdict sub = check_subsolution(g, nf.vertices, w, tol.zero);
  Json report{{"command", "solve"}, {"level", a}, {"critical_value", c}, {"mode", mode}};
  Json values = Json::object();
  for (std::size_t x = 0; x < g.vertex_count(); ++x) values[vertex_name(g, VertexId{x})] = nf.vertices.values[x];
  report["values"] = std::move(values);
  report["subsolution"] = subsolution_json(g, sub);
  if (sub.ok) report["solution"] = solution_json(g, check_solution(g, nf.vertices, w, tol.zero));
  report["network_check"] = verdict_json(g, check_network_solution(net, nf, tol.zero));
  report["residual"] = residual_json(g, nf);
  report["tolerances"] = tolerances_json(tol);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const FunctionSpec fs = to_function_spec(g, nf);
    write_file((std::filesystem::path(out_dir) / "solution.json").string(), serialize_function(fs));
    std::ostringstream csv;
    write_csv(csv, g, nf, resolution);
    write_file((std::filesystem::path(out_dir) / "profiles.csv").string(), csv.str());
    report["outputs"] = {(std::filesystem::path(out_dir) / "solution.json").string(),
                         (std::filesystem::path(out_dir) / "profiles.csv").string()};
  }
  out << report.dump(2) << '\n';
  return 0;
}

int cmd_sample(const std::string& path, const std::string& solution, std::size_t resolution, std::ostream& out) {
  const Loaded in = load(path);
  const NetworkFunction nf = from_function_spec(in.network, parse_function(read_file(solution)));
  write_csv(out, in.network.graph(), nf, resolution);
  return 0;
}

int cmd_check(const std::string& path, const std::string& function, const std::string& level,
              const std::string& mode, std::ostream& out) {
  const Loaded in = load(path);
  const Network& net = in.network;
  const Graph& g = net.graph();
  const Tolerances& tol = net.tolerances();
  Context ctx(net);
  const double a = ctx.resolve_level(level);
  const FunctionSpec fs = parse_function(read_file(function));
  VertexFunction u;
  u.level = a;
  u.values.assign(g.vertex_count(), std::numeric_limits<double>::quiet_NaN());
  for (const auto& [name, value] : fs.values) u.values[lookup_vertex(g, name).index] = value;
  for (std::size_t x = 0; x < g.vertex_count(); ++x) {
    if (std::isnan(u.values[x])) {
      throw ValidationError("function file has no value for vertex '" + vertex_name(g, VertexId{x}) + "'");
    }
  }
  const LevelWeights w = compute_weights(net, a);
  const SubsolutionVerdict sub = check_subsolution(g, u, w, tol.zero);
  Json report{{"command", "check"}, {"level", a}, {"mode", mode}};
  report["subsolution"] = subsolution_json(g, sub);
  bool ok = sub.ok;
  if (mode == "sol") {
    if (sub.ok) {
      const SolutionVerdict sol = check_solution(g, u, w, tol.zero);
      report["solution"] = solution_json(g, sol);
      ok = sol.ok;
    } else {
      report["solution"] = Json{{"ok", false}, {"reason", "not a subsolution"}};
    }
  }
  report["ok"] = ok;
  report["tolerances"] = tolerances_json(tol);
  out << report.dump(2) << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eikonal Hamilton-Jacobi equations on networks", "hjnet"};
  app.require_subcommand(1);

  std::string net, level = "critical", from, to, trace, out_dir, solution, function, mode = "sol";
  std::size_t resolution = 101;

  auto* validate = app.add_subcommand("validate", "Parse and check a network file");
  validate->add_option("network", net, "Network file")->required();

  auto* critical = app.add_subcommand("critical", "Critical value and per-arc floor levels");
  critical->add_option("network", net, "Network file")->required();

  auto* aubry = app.add_subcommand("aubry", "Aubry set at the critical level");
  aubry->add_option("network", net, "Network file")->required();

  auto* distance = app.add_subcommand("distance", "Intrinsic distance between two points");
  distance->add_option("network", net, "Network file")->required();
  distance->add_option("--level", level, "Level a, or 'critical'")->required();
  distance->add_option("--from", from, "Vertex id or arc@s")->required();
  distance->add_option("--to", to, "Vertex id or arc@s")->required();

  auto* solve = app.add_subcommand("solve", "Solve the boundary problem for a trace");
  solve->add_option("network", net, "Network file")->required();
  solve->add_option("--level", level, "Level a, or 'critical'")->required();
  solve->add_option("--trace", trace, "Trace file")->required();
  solve->add_option("--out", out_dir, "Directory for solution.json and profiles.csv");
  solve->add_option("--resolution", resolution, "Samples per arc in profiles.csv")->check(CLI::Range(2, 1000000));

  auto* sample_cmd = app.add_subcommand("sample", "Sample a stored solution along every arc as CSV");
  sample_cmd->add_option("network", net, "Network file")->required();
  sample_cmd->add_option("--solution", solution, "Solution file")->required();
  sample_cmd->add_option("--resolution", resolution, "Samples per arc")->required()->check(CLI::Range(2, 1000000));

  auto* check = app.add_subcommand("check", "Check a vertex function at a level");
  check->add_option("network", net, "Network file")->required();
  check->add_option("--function", function, "Function file")->required();
  check->add_option("--level", level, "Level a, or 'critical'")->required();
  check->add_option("--mode", mode, "sub or sol")->check(CLI::IsMember({"sub", "sol"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorCategory::parse);
  }

  try {
    if (validate->parsed()) return cmd_validate(net, out);
    if (critical->parsed()) return cmd_critical(net, out);
    if (aubry->parsed()) return cmd_aubry(net, out);
    if (distance->parsed()) return cmd_distance(net, level, from, to, out);
    if (solve->parsed()) return cmd_solve(net, level, trace, out_dir, resolution, out, err);
    if (sample_cmd->parsed()) return cmd_sample(net, solution, resolution, out);
    if (check->parsed()) return cmd_check(net, function, level, mode, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.category()) << "): " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace hjnet::cli
