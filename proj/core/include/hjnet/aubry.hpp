#pragma once

#include <span>
#include <vector>

#include "hjnet/critical.hpp"

namespace hjnet {

/// Whether an arc lies in the network Aubry set, and through which orientation.
struct ArcMembership {
  bool forward = false;
  bool backward = false;

  bool in_aubry() const noexcept { return forward || backward; }
};

struct AubryData {
  double level = 0.0;
  std::vector<EdgeId> edges;                 // sorted
  std::vector<VertexId> vertices;            // sorted
  std::vector<std::vector<VertexId>> classes;
  std::vector<ArcMembership> arcs;           // indexed by ArcId
  /// Cost of the cheapest cycle through each edge, sigma_c(e) + S_c(t(e), o(e)).
  /// Values near tol_zero flag borderline classifications.
  std::vector<double> edge_margin;

  bool contains(EdgeId e) const;
  bool contains(VertexId x) const;
};

/// Cheapest-cycle cost through every edge. For loops the way back may be empty.
std::vector<double> cycle_margins(const Graph& g, const LevelWeights& w, const DistanceTable& table);

/// Edges lying on a cycle of cost ~0. MisuseError when the table and the
/// weights were computed at different levels.
std::vector<EdgeId> aubry_edges(const Graph& g, const LevelWeights& w, const DistanceTable& table,
                                double tol_zero);

/// {x : S_c(x,x) <= tol_zero}. ConsistencyError when empty.
std::vector<VertexId> projected_aubry(const DistanceTable& table, double tol_zero);

/// Classes of the relation S_c(x,y) + S_c(y,x) <= tol_zero on the given vertices.
std::vector<std::vector<VertexId>> static_classes(const DistanceTable& table, std::span<const VertexId> vertices,
                                                  double tol_zero);

std::vector<ArcMembership> classify_arcs(const Graph& g, std::span<const EdgeId> aubry);

/// Everything above at level c with the network's tol.zero.
AubryData compute_aubry(const Network& network, const LevelWeights& w, const DistanceTable& table);

/// The critical level with the objects every downstream solver needs.
struct CriticalData {
  CriticalValue critical;
  LevelWeights weights;
  DistanceTable table;
  AubryData aubry;
};

CriticalData analyze_critical(const Network& network);

}  // namespace hjnet
