#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hjnet/graph.hpp"
#include "hjnet/network.hpp"

namespace hjnet {

/// The level-a cochain: one weight per directed edge, plus per-arc diagnostics.
struct LevelWeights {
  double level = 0.0;
  std::vector<double> weight;           // indexed by EdgeId
  std::vector<ArcConstants> arcs;       // indexed by ArcId
  std::vector<double> quadrature_error; // Richardson estimate per arc

  double operator[](EdgeId e) const { return weight.at(e.index); }
};

/// Computes both orientation weights for every arc. LevelError if the level is
/// below some arc's a_gamma by more than tol.level.
LevelWeights compute_weights(const Network& network, double a);

/// Bellman-Ford from a virtual source joined to every vertex. Returns a
/// negative cycle (as a concatenated edge list) when one exists. Each edge
/// weight is raised by `shift` first.
std::optional<Path> find_negative_cycle(const Graph& g, std::span<const double> weight, double shift = 0.0);

/// A weighted arc of an arbitrary digraph on vertices 0..n-1.
struct WeightedEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double weight = 0.0;
};

/// All-pairs least path weights S(x,y) over nonempty paths, with first-edge
/// witnesses. S(x,x) is the cheapest cycle through x.
class DistanceTable {
 public:
  /// Floyd-Warshall. Throws LevelError when some S(x,x) < -negative_tol.
  static DistanceTable floyd_warshall(std::size_t n, std::span<const WeightedEdge> edges, double level,
                                      double negative_tol);

  double level() const noexcept { return level_; }
  std::size_t size() const noexcept { return n_; }
  double operator()(VertexId x, VertexId y) const { return at(x.index, y.index); }
  double at(std::size_t x, std::size_t y) const { return dist_[x * n_ + y]; }

  /// Edge indices (into the input edge list) of an optimal path x -> y.
  std::vector<std::size_t> witness(std::size_t x, std::size_t y) const;
  Path witness(VertexId x, VertexId y) const;

 private:
  std::size_t n_ = 0;
  double level_ = 0.0;
  std::vector<double> dist_;
  std::vector<std::ptrdiff_t> first_;  // first edge index on an optimal path, -1 if none
  std::vector<std::size_t> edge_to_;   // terminus per edge index
};

/// Least cycle value of the weighted graph. If Bellman-Ford finds a negative
/// cycle its (negative) value is returned; otherwise min_x S(x,x) >= 0.
double min_cycle_value(const Graph& g, const LevelWeights& w);

/// Result of the critical-value search with its bracketing certificate.
struct CriticalValue {
  double value = 0.0;
  double a0 = 0.0;
  /// Highest probed level that still had a negative cycle (NaN when c = a0).
  double below = 0.0;
  /// min_cycle_value at the returned level.
  double cycle_value = 0.0;
  int probes = 0;
};

/// c = a0 when no cycle is negative beyond tol.zero at a0; otherwise the root
/// of a -> min_cycle_value(a) by bisection above a0.
CriticalValue critical_value(const Network& network);

DistanceTable distance_table(const Graph& g, const LevelWeights& w, double negative_tol);
DistanceTable distance_table(const Network& network, double a);

/// Warnings for arcs with a_gamma = a0 whose bottom level s -> min_p H is not
/// constant; uniqueness guarantees at the bottom level are void for them.
std::vector<std::string> validate_H4(const Network& network);

}  // namespace hjnet
