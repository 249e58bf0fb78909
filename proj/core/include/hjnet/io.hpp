#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hjnet/hamiltonian.hpp"
#include "hjnet/network.hpp"
#include "hjnet/tolerances.hpp"

namespace hjnet {

inline constexpr int kFormatVersion = 1;

struct VertexSpec {
  std::string id;
  std::optional<std::string> label;
  std::vector<double> coords;

  bool operator==(const VertexSpec&) const = default;
};

struct ArcSpec {
  std::string id;
  std::string tail;
  std::string head;
  TiltedEikonal hamiltonian;

  bool closed() const { return tail == head; }
  bool operator==(const ArcSpec&) const = default;
};

/// Network file contents. Only the tilted_eikonal family has a file form.
struct NetworkSpec {
  int format_version = kFormatVersion;
  std::vector<VertexSpec> vertices;
  std::vector<ArcSpec> arcs;
  std::vector<std::pair<std::string, double>> tolerances;  // in file order

  bool operator==(const NetworkSpec&) const = default;
};

/// ParseError for malformed text or wrong types, ValidationError for bad
/// references and values; messages carry the JSON field path.
NetworkSpec parse_network(const std::string& text);
std::string serialize_network(const NetworkSpec& spec);

/// Tolerances: defaults, then the file's overrides, then HJNET_TOL_* when
/// `use_environment` is set.
Tolerances resolve_tolerances(const NetworkSpec& spec, bool use_environment = true);
Network build_network(const NetworkSpec& spec, bool use_environment = true);

/// Reads a whole file; ParseError when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// One support element of a trace file: a vertex id or a point (arc id, s).
struct TraceEntrySpec {
  std::optional<std::string> vertex;
  std::optional<std::pair<std::string, double>> point;
  double value = 0.0;
};

struct TraceSpec {
  std::optional<double> level;  // empty means "critical"
  std::vector<TraceEntrySpec> entries;
};

TraceSpec parse_trace(const std::string& text);

struct PointValue {
  std::string arc;
  double s = 0.0;
  double value = 0.0;

  bool operator==(const PointValue&) const = default;
};

/// A solved function: vertex values plus values at interior split points.
struct FunctionSpec {
  double level = 0.0;
  std::vector<std::pair<std::string, double>> values;  // by vertex id
  std::vector<PointValue> points;

  bool operator==(const FunctionSpec&) const = default;
};

FunctionSpec parse_function(const std::string& text);
std::string serialize_function(const FunctionSpec& spec);

/// printf("%.17g").
std::string format_double(double x);

}  // namespace hjnet
