#include "hjnet/dfe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "hjnet/error.hpp"

namespace hjnet {

namespace {

void require_level(const Trace& trace, const DistanceTable& table) {
  if (trace.level != table.level()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "trace level " << trace.level << " does not match distance table level " << table.level();
    throw MisuseError(msg.str());
  }
}

void require_distinct_support(const Trace& trace, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (const auto& [y, value] : trace.entries) {
    if (y.index >= n) throw MisuseError("trace references a vertex outside the graph");
    if (seen[y.index]) throw MisuseError("trace lists vertex " + std::to_string(y.index) + " twice");
    if (!std::isfinite(value)) throw MisuseError("trace value is not finite");
    seen[y.index] = 1;
  }
}

void require_admissible(const Trace& trace, const DistanceTable& table, double tol) {
  const AdmissibilityVerdict v = check_admissible(trace, table, tol);
  if (v.ok) return;
  const PairViolation& p = v.violations.front();
  std::ostringstream msg;
  msg.precision(17);
  msg << "inadmissible trace: g(" << p.x.index << ") - g(" << p.y.index << ") exceeds S(" << p.y.index << ", "
      << p.x.index << ") by " << p.excess << " (" << v.violations.size() << " violating pair(s))";
  throw AdmissibilityError(msg.str());
}

VertexFunction hopf_lax(const Trace& trace, const DistanceTable& table) {
  VertexFunction v;
  v.level = table.level();
  v.values.assign(table.size(), std::numeric_limits<double>::infinity());
  for (std::size_t x = 0; x < table.size(); ++x) {
    for (const auto& [y, g] : trace.entries) v.values[x] = std::min(v.values[x], g + table.at(y.index, x));
  }
  return v;
}

}  // namespace

double coboundary(const Graph& g, const VertexFunction& u, EdgeId e) {
  return u(g.terminus(e)) - u(g.origin(e));
}

SubsolutionVerdict check_subsolution(const Graph& g, const VertexFunction& u, const LevelWeights& w, double tol) {
  SubsolutionVerdict out;
  for (const DirectedEdge& e : g.edges()) {
    const double excess = coboundary(g, u, e.id) - w[e.id];
    if (excess > tol) out.violations.push_back({e.id, excess});
  }
  out.ok = out.violations.empty();
  return out;
}

SolutionVerdict check_solution(const Graph& g, const VertexFunction& u, const LevelWeights& w, double tol) {
  const SubsolutionVerdict sub = check_subsolution(g, u, w, tol);
  if (!sub.ok) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "check_solution needs a subsolution; edge " << sub.violations.front().edge.index << " exceeds its weight by "
        << sub.violations.front().excess;
    throw MisuseError(msg.str());
  }
  SolutionVerdict out;
  out.achieving.resize(g.vertex_count());
  out.defect.assign(g.vertex_count(), std::numeric_limits<double>::infinity());
  for (std::size_t x = 0; x < g.vertex_count(); ++x) {
    const VertexId vx{x};
    for (EdgeId e : g.star(vx)) {
      const double candidate = u(g.terminus(e)) + w[g.reverse(e)] - u(vx);
      if (candidate < out.defect[x]) {
        out.defect[x] = candidate;
        out.achieving[x] = e;
      }
    }
    if (!(std::abs(out.defect[x]) <= tol)) out.failing.push_back(vx);
  }
  out.ok = out.failing.empty();
  return out;
}

bool satisfies_distance_bounds(const VertexFunction& u, const DistanceTable& table, double slack) {
  for (std::size_t x = 0; x < table.size(); ++x) {
    for (std::size_t y = 0; y < table.size(); ++y) {
      if (u.values[x] - u.values[y] > table.at(y, x) + slack) return false;
    }
  }
  return true;
}

AdmissibilityVerdict check_admissible(const Trace& trace, const DistanceTable& table, double tol) {
  AdmissibilityVerdict out;
  for (const auto& [x, gx] : trace.entries) {
    for (const auto& [y, gy] : trace.entries) {
      if (x == y) continue;
      const double excess = gx - gy - table(y, x);
      if (excess > tol) out.violations.push_back({x, y, excess});
    }
  }
  out.ok = out.violations.empty();
  return out;
}

VertexFunction solve_critical(const Trace& trace, const DistanceTable& table, const AubryData& aubry, double tol) {
  require_level(trace, table);
  require_distinct_support(trace, table.size());
  if (trace.entries.empty()) throw MisuseError("solve_critical: the trace support is empty");
  for (const auto& [y, value] : trace.entries) {
    if (!aubry.contains(y)) {
      throw MisuseError("solve_critical: support vertex " + std::to_string(y.index) +
                        " is not in the projected Aubry set (use solve_relaxed)");
    }
  }
  require_admissible(trace, table, tol);
  VertexFunction v = hopf_lax(trace, table);
  for (const auto& [y, value] : trace.entries) v.values[y.index] = value;
  return v;
}

VertexFunction solve_relaxed(const Trace& trace, const DistanceTable& table) {
  require_level(trace, table);
  require_distinct_support(trace, table.size());
  if (trace.entries.empty()) throw MisuseError("solve_relaxed: the trace support is empty");
  return hopf_lax(trace, table);
}

VertexFunction solve_supercritical(const Trace& trace, const DistanceTable& table, double critical, double tol) {
  require_level(trace, table);
  if (!(table.level() > critical + tol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "solve_supercritical needs a > c; got a = " << table.level() << ", c = " << critical;
    throw MisuseError(msg.str());
  }
  if (trace.entries.empty()) {
    throw MisuseError("solve_supercritical: empty support; above the critical value the equation has no solution "
                      "on the whole vertex set");
  }
  require_distinct_support(trace, table.size());
  require_admissible(trace, table, tol);
  VertexFunction v = hopf_lax(trace, table);
  for (const auto& [y, value] : trace.entries) v.values[y.index] = value;
  return v;
}

VertexFunction distance_from(const DistanceTable& table, VertexId y) {
  VertexFunction u;
  u.level = table.level();
  u.values.resize(table.size());
  for (std::size_t x = 0; x < table.size(); ++x) u.values[x] = table.at(y.index, x);
  return u;
}

VertexFunction negative_distance_to(const DistanceTable& table, VertexId y) {
  VertexFunction u;
  u.level = table.level();
  u.values.resize(table.size());
  for (std::size_t x = 0; x < table.size(); ++x) u.values[x] = -table.at(x, y.index);
  return u;
}

StrictSubsolution strict_subsolution(const Graph& g, const LevelWeights& w, const DistanceTable& table,
                                     const AubryData& aubry) {
  if (aubry.vertices.empty()) throw MisuseError("strict_subsolution needs a nonempty Aubry set");
  std::vector<EdgeId> outside;
  for (const DirectedEdge& e : g.edges()) {
    if (!aubry.contains(e.id)) outside.push_back(e.id);
  }

  StrictSubsolution out;
  out.w.level = table.level();
  if (outside.empty()) {
    out.w = distance_from(table, aubry.vertices.front());
  } else {
    std::map<std::size_t, VertexFunction> from_cache;
    std::map<std::size_t, VertexFunction> to_cache;
    auto from = [&](VertexId y) -> const VertexFunction& {
      auto it = from_cache.find(y.index);
      if (it == from_cache.end()) {
        // Empty-path convention at y, so every edge into y keeps positive slack.
        VertexFunction u = distance_from(table, y);
        u.values[y.index] = std::min(0.0, u.values[y.index]);
        it = from_cache.emplace(y.index, std::move(u)).first;
      }
      return it->second;
    };
    auto to = [&](VertexId y) -> const VertexFunction& {
      auto it = to_cache.find(y.index);
      if (it == to_cache.end()) it = to_cache.emplace(y.index, negative_distance_to(table, y)).first;
      return it->second;
    };
    out.w.values.assign(g.vertex_count(), 0.0);
    const double lambda = 1.0 / static_cast<double>(outside.size());
    for (EdgeId e : outside) {
      const VertexId t = g.terminus(e);
      const VertexFunction* chosen = &from(t);
      if (aubry.contains(t)) {
        const VertexFunction& alt = to(t);
        const double slack_from = w[e] - coboundary(g, *chosen, e);
        const double slack_to = w[e] - coboundary(g, alt, e);
        if (slack_to > slack_from) chosen = &alt;
      }
      for (std::size_t x = 0; x < g.vertex_count(); ++x) out.w.values[x] += lambda * chosen->values[x];
    }
  }

  out.slack.resize(g.edge_count());
  for (const DirectedEdge& e : g.edges()) out.slack[e.id.index] = w[e.id] - coboundary(g, out.w, e.id);
  for (EdgeId e : outside) {
    if (!(out.slack[e.index] > 0.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "strict subsolution has slack " << out.slack[e.index] << " on non-Aubry edge " << e.index;
      throw ConsistencyError(msg.str());
    }
  }
  return out;
}

}  // namespace hjnet
