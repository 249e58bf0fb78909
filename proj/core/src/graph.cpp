#include "hjnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "hjnet/error.hpp"

namespace hjnet {

Graph Graph::build(std::vector<VertexInfo> vertices, std::vector<ArcInfo> arcs) {
  if (vertices.empty()) throw ValidationError("network has no vertices");

  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!seen.emplace(vertices[i].name, i).second) {
      throw ValidationError("duplicate vertex id '" + vertices[i].name + "'");
    }
  }
  std::map<std::string, std::size_t> labels;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].label && !labels.emplace(*vertices[i].label, i).second) {
      throw ValidationError("duplicate vertex label '" + *vertices[i].label + "'");
    }
  }
  seen.clear();
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const ArcInfo& a = arcs[k];
    if (!seen.emplace(a.name, k).second) throw ValidationError("duplicate arc id '" + a.name + "'");
    if (a.tail.index >= vertices.size() || a.head.index >= vertices.size()) {
      throw ValidationError("arc '" + a.name + "' references a vertex that does not exist");
    }
  }

  Graph g;
  g.vertices_ = std::move(vertices);
  g.arcs_ = std::move(arcs);
  g.edges_.reserve(2 * g.arcs_.size());
  for (std::size_t k = 0; k < g.arcs_.size(); ++k) {
    const ArcInfo& a = g.arcs_[k];
    EdgeId fwd{2 * k};
    EdgeId bwd{2 * k + 1};
    g.edges_.push_back({fwd, a.tail, a.head, bwd, ArcId{k}, Orientation::forward});
    g.edges_.push_back({bwd, a.head, a.tail, fwd, ArcId{k}, Orientation::backward});
  }
  g.stars_.assign(g.vertices_.size(), {});
  for (const DirectedEdge& e : g.edges_) g.stars_[e.origin.index].push_back(e.id);

  // Connectivity by union-find over arcs.
  std::vector<std::size_t> parent(g.vertices_.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const ArcInfo& a : g.arcs_) parent[find(a.tail.index)] = find(a.head.index);
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t v = 0; v < g.vertices_.size(); ++v) components[find(v)].push_back(v);
  if (components.size() > 1) {
    std::ostringstream msg;
    msg << "network is disconnected: " << components.size() << " components; not reachable from '"
        << g.display_name(VertexId{0}) << "':";
    std::size_t root = find(0);
    for (const auto& [rep, members] : components) {
      if (rep == root) continue;
      msg << " {";
      for (std::size_t i = 0; i < members.size(); ++i) {
        msg << (i ? ", " : "") << g.display_name(VertexId{members[i]});
      }
      msg << "}";
    }
    throw ValidationError(msg.str());
  }
  return g;
}

std::optional<VertexId> Graph::find_vertex(const std::string& name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].name == name) return VertexId{i};
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].label && *vertices_[i].label == name) return VertexId{i};
  }
  return std::nullopt;
}

std::optional<ArcId> Graph::find_arc(const std::string& name) const {
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    if (arcs_[k].name == name) return ArcId{k};
  }
  return std::nullopt;
}

const std::string& Graph::display_name(VertexId x) const {
  const VertexInfo& v = vertices_.at(x.index);
  return v.label ? *v.label : v.name;
}

bool is_concatenated(const Graph& g, const Path& path) {
  for (std::size_t j = 0; j + 1 < path.edges.size(); ++j) {
    if (g.terminus(path.edges[j]) != g.origin(path.edges[j + 1])) return false;
  }
  return true;
}

namespace {

void check_cap(const Graph& g, std::size_t cap) {
  if (g.edge_count() <= cap) return;
  std::size_t max_degree = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    max_degree = std::max(max_degree, g.star(VertexId{v}).size());
  }
  // Crude upper bound on simple paths: sum_k (deg)^k up to |V| hops.
  double estimate = 0.0;
  for (std::size_t k = 1; k <= g.vertex_count(); ++k) {
    estimate += std::pow(static_cast<double>(max_degree), static_cast<double>(k));
  }
  std::ostringstream msg;
  msg << "brute-force enumeration refused: " << g.edge_count() << " directed edges exceeds cap "
      << cap << " (up to ~" << estimate << " simple paths)";
  throw MisuseError(msg.str());
}

}  // namespace

std::vector<Path> enumerate_simple_cycles(const Graph& g, std::size_t cap) {
  check_cap(g, cap);
  std::vector<Path> out;
  std::vector<char> visited(g.vertex_count(), 0);
  std::vector<EdgeId> stack;

  for (const DirectedEdge& first : g.edges()) {
    const VertexId start = first.origin;
    if (first.terminus == start) {
      out.push_back(Path{{first.id}});
      continue;
    }
    std::function<void(VertexId)> extend = [&](VertexId cur) {
      for (EdgeId e : g.star(cur)) {
        if (e <= first.id) continue;
        const VertexId next = g.terminus(e);
        if (next == start) {
          stack.push_back(e);
          out.push_back(Path{stack});
          stack.pop_back();
        } else if (!visited[next.index]) {
          visited[next.index] = 1;
          stack.push_back(e);
          extend(next);
          stack.pop_back();
          visited[next.index] = 0;
        }
      }
    };
    visited[start.index] = 1;
    visited[first.terminus.index] = 1;
    stack.assign(1, first.id);
    extend(first.terminus);
    visited[first.terminus.index] = 0;
    visited[start.index] = 0;
  }
  return out;
}

std::vector<Path> enumerate_simple_paths(const Graph& g, VertexId x, VertexId y, std::size_t cap) {
  check_cap(g, cap);
  if (x.index >= g.vertex_count() || y.index >= g.vertex_count()) {
    throw MisuseError("enumerate_simple_paths: vertex out of range");
  }
  std::vector<Path> out;
  std::vector<char> visited(g.vertex_count(), 0);
  std::vector<EdgeId> stack;
  std::function<void(VertexId)> extend = [&](VertexId cur) {
    for (EdgeId e : g.star(cur)) {
      const VertexId next = g.terminus(e);
      if (next == y) {
        stack.push_back(e);
        out.push_back(Path{stack});
        stack.pop_back();
      } else if (!visited[next.index]) {
        visited[next.index] = 1;
        stack.push_back(e);
        extend(next);
        stack.pop_back();
        visited[next.index] = 0;
      }
    }
  };
  visited[x.index] = 1;
  extend(x);
  return out;
}

double path_weight(const Path& path, std::span<const double> weight) {
  double total = 0.0;
  for (EdgeId e : path.edges) total += weight[e.index];
  return total;
}

}  // namespace hjnet
