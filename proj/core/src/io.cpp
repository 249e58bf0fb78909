#include "hjnet/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hjnet/error.hpp"

namespace hjnet {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

Json parse_text(const std::string& text, const char* kind) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed ") + kind + " file: " + e.what());
  }
}

const Json& member(const Json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path, std::string("missing field '") + key + "'");
  return *it;
}

void expect_object(const Json& j, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected an object");
}

void expect_array(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) parse_fail(path, "number is not finite");
  return x;
}

std::string identifier(const Json& j, const std::string& path) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.empty()) parse_fail(path, "identifier is empty");
    return s;
  }
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  parse_fail(path, "expected a string or integer identifier");
}

std::vector<double> numbers(const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) parse_fail(path, "unknown field '" + it.key() + "'");
  }
}

ScalarFunction parse_scalar(const Json& j, const std::string& path) {
  if (j.is_number()) return ScalarFunction::constant(number(j, path));
  expect_object(j, path);
  const Json& type = member(j, path, "type");
  if (!type.is_string()) parse_fail(path + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "constant") {
      reject_unknown(j, path, {"type", "value"});
      return ScalarFunction::constant(number(member(j, path, "value"), path + ".value"));
    }
    if (t == "polynomial") {
      reject_unknown(j, path, {"type", "coefficients"});
      return ScalarFunction::polynomial(numbers(member(j, path, "coefficients"), path + ".coefficients"));
    }
    if (t == "fourier") {
      reject_unknown(j, path, {"type", "a0", "a", "b"});
      const double a0 = j.contains("a0") ? number(j["a0"], path + ".a0") : 0.0;
      std::vector<double> a = j.contains("a") ? numbers(j["a"], path + ".a") : std::vector<double>{};
      std::vector<double> b = j.contains("b") ? numbers(j["b"], path + ".b") : std::vector<double>{};
      return ScalarFunction::fourier(a0, std::move(a), std::move(b));
    }
    if (t == "piecewise_linear") {
      reject_unknown(j, path, {"type", "nodes"});
      const Json& nodes = member(j, path, "nodes");
      expect_array(nodes, path + ".nodes");
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string np = path + ".nodes[" + std::to_string(i) + "]";
        const auto xy = numbers(nodes[i], np);
        if (xy.size() != 2) parse_fail(np, "expected [s, value]");
        pts.emplace_back(xy[0], xy[1]);
      }
      return ScalarFunction::piecewise_linear(std::move(pts));
    }
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  parse_fail(path + ".type", "unknown function type '" + t + "'");
}

Json scalar_json(const ScalarFunction& f) {
  Json j;
  std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, ScalarFunction::Constant>) {
          j["type"] = "constant";
          j["value"] = shape.value;
        } else if constexpr (std::is_same_v<T, ScalarFunction::Polynomial>) {
          j["type"] = "polynomial";
          j["coefficients"] = shape.coefficients;
        } else if constexpr (std::is_same_v<T, ScalarFunction::Fourier>) {
          j["type"] = "fourier";
          j["a0"] = shape.a0;
          j["a"] = shape.cosines;
          j["b"] = shape.sines;
        } else {
          j["type"] = "piecewise_linear";
          Json nodes = Json::array();
          for (const auto& [s, v] : shape.nodes) nodes.push_back({s, v});
          j["nodes"] = nodes;
        }
      },
      f.shape());
  return j;
}

TiltedEikonal parse_hamiltonian(const Json& j, const std::string& path) {
  expect_object(j, path);
  const Json& family = member(j, path, "family");
  if (!family.is_string()) parse_fail(path + ".family", "expected a string");
  if (family.get<std::string>() != "tilted_eikonal") {
    parse_fail(path + ".family", "unknown family '" + family.get<std::string>() + "' (supported: tilted_eikonal)");
  }
  reject_unknown(j, path, {"family", "b", "f", "q"});
  TiltedEikonal h;
  if (j.contains("b")) h.b = parse_scalar(j["b"], path + ".b");
  h.f = parse_scalar(member(j, path, "f"), path + ".f");
  if (j.contains("q")) h.q = number(j["q"], path + ".q");
  if (!(h.q >= 1.0)) throw ValidationError(path + ".q: exponent must be >= 1");
  return h;
}

}  // namespace

NetworkSpec parse_network(const std::string& text) {
  const Json root = parse_text(text, "network");
  expect_object(root, "network");
  reject_unknown(root, "network", {"format_version", "vertices", "arcs", "tolerances"});
  NetworkSpec spec;
  const Json& version = member(root, "network", "format_version");
  if (!version.is_number_integer()) parse_fail("format_version", "expected an integer");
  spec.format_version = version.get<int>();
  if (spec.format_version != kFormatVersion) {
    parse_fail("format_version", "unsupported version " + std::to_string(spec.format_version) + " (expected " +
                                     std::to_string(kFormatVersion) + ")");
  }

  const Json& vertices = member(root, "network", "vertices");
  expect_array(vertices, "vertices");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string path = "vertices[" + std::to_string(i) + "]";
    const Json& v = vertices[i];
    expect_object(v, path);
    reject_unknown(v, path, {"id", "label", "coords"});
    VertexSpec vs;
    vs.id = identifier(member(v, path, "id"), path + ".id");
    if (v.contains("label")) {
      if (!v["label"].is_string()) parse_fail(path + ".label", "expected a string");
      vs.label = v["label"].get<std::string>();
    }
    if (v.contains("coords")) vs.coords = numbers(v["coords"], path + ".coords");
    if (!ids.insert(vs.id).second) throw ValidationError(path + ".id: duplicate vertex id '" + vs.id + "'");
    spec.vertices.push_back(std::move(vs));
  }

  const Json& arcs = member(root, "network", "arcs");
  expect_array(arcs, "arcs");
  std::set<std::string> arc_ids;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string path = "arcs[" + std::to_string(i) + "]";
    const Json& a = arcs[i];
    expect_object(a, path);
    reject_unknown(a, path, {"id", "tail", "head", "hamiltonian"});
    ArcSpec as;
    as.id = identifier(member(a, path, "id"), path + ".id");
    as.tail = identifier(member(a, path, "tail"), path + ".tail");
    as.head = identifier(member(a, path, "head"), path + ".head");
    if (!arc_ids.insert(as.id).second) throw ValidationError(path + ".id: duplicate arc id '" + as.id + "'");
    if (!ids.count(as.tail)) {
      throw ValidationError(path + " ('" + as.id + "'): tail '" + as.tail + "' is not a declared vertex");
    }
    if (!ids.count(as.head)) {
      throw ValidationError(path + " ('" + as.id + "'): head '" + as.head + "' is not a declared vertex");
    }
    as.hamiltonian = parse_hamiltonian(member(a, path, "hamiltonian"), path + ".hamiltonian");
    spec.arcs.push_back(std::move(as));
  }

  if (root.contains("tolerances")) {
    const Json& tol = root["tolerances"];
    expect_object(tol, "tolerances");
    Tolerances probe;
    for (auto it = tol.begin(); it != tol.end(); ++it) {
      const double value = number(it.value(), "tolerances." + it.key());
      try {
        probe.set(it.key(), value);
      } catch (const ValidationError& e) {
        throw ValidationError(std::string("tolerances.") + it.key() + ": " + e.what());
      }
      spec.tolerances.emplace_back(it.key(), value);
    }
  }
  return spec;
}

std::string serialize_network(const NetworkSpec& spec) {
  Json root;
  root["format_version"] = spec.format_version;
  Json vertices = Json::array();
  for (const VertexSpec& v : spec.vertices) {
    Json j;
    j["id"] = v.id;
    if (v.label) j["label"] = *v.label;
    if (!v.coords.empty()) j["coords"] = v.coords;
    vertices.push_back(std::move(j));
  }
  root["vertices"] = std::move(vertices);
  Json arcs = Json::array();
  for (const ArcSpec& a : spec.arcs) {
    Json j;
    j["id"] = a.id;
    j["tail"] = a.tail;
    j["head"] = a.head;
    Json h;
    h["family"] = "tilted_eikonal";
    h["b"] = scalar_json(a.hamiltonian.b);
    h["f"] = scalar_json(a.hamiltonian.f);
    h["q"] = a.hamiltonian.q;
    j["hamiltonian"] = std::move(h);
    arcs.push_back(std::move(j));
  }
  root["arcs"] = std::move(arcs);
  if (!spec.tolerances.empty()) {
    Json tol = Json::object();
    for (const auto& [name, value] : spec.tolerances) tol[name] = value;
    root["tolerances"] = std::move(tol);
  }
  return root.dump(2) + "\n";
}

Tolerances resolve_tolerances(const NetworkSpec& spec, bool use_environment) {
  Tolerances tol;
  for (const auto& [name, value] : spec.tolerances) tol.set(name, value);
  return use_environment ? tol.with_environment() : tol;
}

Network build_network(const NetworkSpec& spec, bool use_environment) {
  std::vector<VertexInfo> vertices;
  for (const VertexSpec& v : spec.vertices) vertices.push_back({v.id, v.label, v.coords});
  auto index_of = [&](const std::string& id) {
    for (std::size_t i = 0; i < spec.vertices.size(); ++i) {
      if (spec.vertices[i].id == id) return VertexId{i};
    }
    throw ValidationError("unknown vertex '" + id + "'");
  };
  std::vector<ArcInfo> arcs;
  std::vector<ArcHamiltonian> hs;
  for (const ArcSpec& a : spec.arcs) {
    arcs.push_back({a.id, index_of(a.tail), index_of(a.head)});
    hs.emplace_back(a.hamiltonian, a.closed());
  }
  return Network(Graph::build(std::move(vertices), std::move(arcs)), std::move(hs),
                 resolve_tolerances(spec, use_environment));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

TraceSpec parse_trace(const std::string& text) {
  const Json root = parse_text(text, "trace");
  expect_object(root, "trace");
  reject_unknown(root, "trace", {"level", "entries"});
  TraceSpec spec;
  const Json& level = member(root, "trace", "level");
  if (level.is_string()) {
    if (level.get<std::string>() != "critical") parse_fail("level", "expected a number or \"critical\"");
  } else {
    spec.level = number(level, "level");
  }
  const Json& entries = member(root, "trace", "entries");
  expect_array(entries, "entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = "entries[" + std::to_string(i) + "]";
    const Json& e = entries[i];
    expect_object(e, path);
    reject_unknown(e, path, {"vertex", "point", "value"});
    TraceEntrySpec entry;
    const bool has_vertex = e.contains("vertex");
    const bool has_point = e.contains("point");
    if (has_vertex == has_point) parse_fail(path, "exactly one of 'vertex' and 'point' is required");
    if (has_vertex) {
      entry.vertex = identifier(e["vertex"], path + ".vertex");
    } else {
      const Json& p = e["point"];
      expect_object(p, path + ".point");
      reject_unknown(p, path + ".point", {"arc", "s"});
      entry.point = std::make_pair(identifier(member(p, path + ".point", "arc"), path + ".point.arc"),
                                   number(member(p, path + ".point", "s"), path + ".point.s"));
    }
    entry.value = number(member(e, path, "value"), path + ".value");
    spec.entries.push_back(std::move(entry));
  }
  return spec;
}

FunctionSpec parse_function(const std::string& text) {
  const Json root = parse_text(text, "function");
  expect_object(root, "function");
  FunctionSpec spec;
  if (root.contains("format_version")) {
    if (!root["format_version"].is_number_integer() || root["format_version"].get<int>() != kFormatVersion) {
      parse_fail("format_version", "unsupported version");
    }
  }
  spec.level = number(member(root, "function", "level"), "level");
  const Json& values = member(root, "function", "values");
  expect_object(values, "values");
  for (auto it = values.begin(); it != values.end(); ++it) {
    spec.values.emplace_back(it.key(), number(it.value(), "values." + it.key()));
  }
  if (root.contains("points")) {
    const Json& points = root["points"];
    expect_array(points, "points");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::string path = "points[" + std::to_string(i) + "]";
      const Json& p = points[i];
      expect_object(p, path);
      spec.points.push_back({identifier(member(p, path, "arc"), path + ".arc"),
                             number(member(p, path, "s"), path + ".s"),
                             number(member(p, path, "value"), path + ".value")});
    }
  }
  return spec;
}

std::string serialize_function(const FunctionSpec& spec) {
  Json root;
  root["format_version"] = kFormatVersion;
  root["level"] = spec.level;
  Json values = Json::object();
  for (const auto& [id, v] : spec.values) values[id] = v;
  root["values"] = std::move(values);
  Json points = Json::array();
  for (const PointValue& p : spec.points) points.push_back({{"arc", p.arc}, {"s", p.s}, {"value", p.value}});
  root["points"] = std::move(points);
  return root.dump(2) + "\n";
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace hjnet
