#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hjnet {

/// Dense index tagged by the kind of object it names.
template <class Tag>
struct Id {
  std::size_t index = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::size_t i) : index(i) {}
  constexpr auto operator<=>(const Id&) const = default;
};

using VertexId = Id<struct VertexTag>;
using EdgeId = Id<struct EdgeTag>;
using ArcId = Id<struct ArcTag>;

/// Orientation of a directed edge relative to its arc's parametrisation.
enum class Orientation { forward, backward };

struct DirectedEdge {
  EdgeId id;
  VertexId origin;
  VertexId terminus;
  EdgeId reverse;
  ArcId arc;
  Orientation orientation = Orientation::forward;
};

struct VertexInfo {
  std::string name;
  std::optional<std::string> label;
  std::vector<double> coords;  // carried for I/O only
};

/// An arc of the embedded network: parametrised on [0,1] from tail to head.
struct ArcInfo {
  std::string name;
  VertexId tail;
  VertexId head;
};

/// A finite sequence of concatenated directed edges.
struct Path {
  std::vector<EdgeId> edges;

  bool operator==(const Path&) const = default;
};

/// Finite connected graph with a fixed-point-free reversal involution on its
/// directed edges. Arc k owns edges 2k (forward) and 2k+1 (backward), so
/// reverse(e) is e with the low bit flipped. Immutable after construction.
class Graph {
 public:
  /// Throws ValidationError on dangling endpoints, duplicate names, an empty
  /// vertex set, or a disconnected result (listing the stranded components).
  static Graph build(std::vector<VertexInfo> vertices, std::vector<ArcInfo> arcs);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const VertexInfo& vertex(VertexId x) const { return vertices_.at(x.index); }
  const ArcInfo& arc(ArcId a) const { return arcs_.at(a.index); }
  const DirectedEdge& edge(EdgeId e) const { return edges_.at(e.index); }
  std::span<const DirectedEdge> edges() const noexcept { return edges_; }

  EdgeId forward_edge(ArcId a) const { return EdgeId{2 * a.index}; }
  EdgeId backward_edge(ArcId a) const { return EdgeId{2 * a.index + 1}; }
  EdgeId reverse(EdgeId e) const { return edges_.at(e.index).reverse; }
  VertexId origin(EdgeId e) const { return edges_.at(e.index).origin; }
  VertexId terminus(EdgeId e) const { return edges_.at(e.index).terminus; }

  /// True when the arc is closed (tail == head), i.e. its edges are loops.
  bool is_closed(ArcId a) const { return arcs_.at(a.index).tail == arcs_.at(a.index).head; }

  /// Edges with origin x, sorted by id.
  std::span<const EdgeId> star(VertexId x) const { return stars_.at(x.index); }

  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<ArcId> find_arc(const std::string& name) const;

  /// Display name of a vertex: its label when present, otherwise its name.
  const std::string& display_name(VertexId x) const;

 private:
  std::vector<VertexInfo> vertices_;
  std::vector<ArcInfo> arcs_;
  std::vector<DirectedEdge> edges_;
  std::vector<std::vector<EdgeId>> stars_;
};

/// True iff every edge of the path starts where the previous one ended.
bool is_concatenated(const Graph& g, const Path& path);

/// Every simple cycle exactly once, rotated so that its lowest edge id comes
/// first. Loops yield the one-edge cycles (e) and (-e). Exponential; refuses
/// graphs with more than `cap` directed edges (MisuseError with an estimate).
std::vector<Path> enumerate_simple_cycles(const Graph& g, std::size_t cap = 24);

/// All simple paths x -> y. For x == y, the simple cycles through x, rotated
/// to start at x.
std::vector<Path> enumerate_simple_paths(const Graph& g, VertexId x, VertexId y,
                                         std::size_t cap = 24);

/// Sum of per-edge weights along a path.
double path_weight(const Path& path, std::span<const double> weight);

}  // namespace hjnet
