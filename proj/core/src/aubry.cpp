#include "hjnet/aubry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hjnet/error.hpp"

namespace hjnet {

bool AubryData::contains(EdgeId e) const { return std::binary_search(edges.begin(), edges.end(), e); }

bool AubryData::contains(VertexId x) const { return std::binary_search(vertices.begin(), vertices.end(), x); }

std::vector<double> cycle_margins(const Graph& g, const LevelWeights& w, const DistanceTable& table) {
  if (w.level != table.level()) {
    throw MisuseError("Aubry edges: weights and distance table were built at different levels");
  }
  std::vector<double> margin(g.edge_count());
  for (const DirectedEdge& e : g.edges()) {
    double back = table(e.terminus, e.origin);
    if (e.origin == e.terminus) back = std::min(0.0, back);
    margin[e.id.index] = w[e.id] + back;
  }
  return margin;
}

std::vector<EdgeId> aubry_edges(const Graph& g, const LevelWeights& w, const DistanceTable& table, double tol_zero) {
  const std::vector<double> margin = cycle_margins(g, w, table);
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < margin.size(); ++i) {
    if (margin[i] <= tol_zero) out.push_back(EdgeId{i});
  }
  return out;
}

std::vector<VertexId> projected_aubry(const DistanceTable& table, double tol_zero) {
  std::vector<VertexId> out;
  double least = table.size() ? table.at(0, 0) : 0.0;
  for (std::size_t x = 0; x < table.size(); ++x) {
    least = std::min(least, table.at(x, x));
    if (table.at(x, x) <= tol_zero) out.push_back(VertexId{x});
  }
  if (out.empty()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "projected Aubry set is empty at level " << table.level() << " (min S(x,x) = " << least
        << ", tol_zero = " << tol_zero << "); the level is not critical";
    throw ConsistencyError(msg.str());
  }
  return out;
}

std::vector<std::vector<VertexId>> static_classes(const DistanceTable& table, std::span<const VertexId> vertices,
                                                  double tol_zero) {
  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (table(vertices[i], vertices[j]) + table(vertices[j], vertices[i]) <= tol_zero) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<std::vector<VertexId>> classes;
  std::vector<std::ptrdiff_t> slot(vertices.size(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(classes.size());
      classes.emplace_back();
    }
    classes[static_cast<std::size_t>(slot[r])].push_back(vertices[i]);
  }
  return classes;
}

std::vector<ArcMembership> classify_arcs(const Graph& g, std::span<const EdgeId> aubry) {
  std::vector<ArcMembership> out(g.arc_count());
  for (EdgeId e : aubry) {
    const DirectedEdge& d = g.edge(e);
    if (d.orientation == Orientation::forward) {
      out[d.arc.index].forward = true;
    } else {
      out[d.arc.index].backward = true;
    }
  }
  return out;
}

AubryData compute_aubry(const Network& network, const LevelWeights& w, const DistanceTable& table) {
  const Graph& g = network.graph();
  const double tol_zero = network.tolerances().zero;
  AubryData out;
  out.level = w.level;
  out.edge_margin = cycle_margins(g, w, table);
  for (std::size_t i = 0; i < out.edge_margin.size(); ++i) {
    if (out.edge_margin[i] <= tol_zero) out.edges.push_back(EdgeId{i});
  }
  out.vertices = projected_aubry(table, tol_zero);
  out.classes = static_classes(table, out.vertices, tol_zero);
  out.arcs = classify_arcs(g, out.edges);
  return out;
}

CriticalData analyze_critical(const Network& network) {
  CriticalValue c = critical_value(network);
  LevelWeights w = compute_weights(network, c.value);
  DistanceTable t = distance_table(network.graph(), w, network.tolerances().zero);
  AubryData a = compute_aubry(network, w, t);
  return {c, std::move(w), std::move(t), std::move(a)};
}

}  // namespace hjnet
