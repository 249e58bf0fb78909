#include "hjnet/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hjnet/error.hpp"
#include "hjnet/numerics.hpp"

namespace hjnet {

LevelWeights compute_weights(const Network& network, double a) {
  const Graph& g = network.graph();
  const Tolerances& tol = network.tolerances();
  LevelWeights w;
  w.level = a;
  w.weight.assign(g.edge_count(), 0.0);
  w.arcs.resize(g.arc_count());
  w.quadrature_error.assign(g.arc_count(), 0.0);
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const ArcId arc{k};
    const ArcConstants& c = network.constants(arc);
    if (a < c.a_gamma - tol.level) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "level " << a << " is below a_gamma = " << c.a_gamma << " of arc '" << g.arc(arc).name << "'";
      throw LevelError(msg.str());
    }
    const SigmaProfile profile(network.hamiltonian(arc), a, tol);
    w.weight[g.forward_edge(arc).index] = edge_weight(profile, Orientation::forward);
    w.weight[g.backward_edge(arc).index] = edge_weight(profile, Orientation::backward);
    w.arcs[k] = c;
    w.quadrature_error[k] = profile.error_estimate();
  }
  return w;
}

std::optional<Path> find_negative_cycle(const Graph& g, std::span<const double> weight, double shift) {
  const std::size_t n = g.vertex_count();
  std::vector<double> dist(n, 0.0);
  std::vector<std::ptrdiff_t> pred(n, -1);
  std::size_t last = n;
  for (std::size_t pass = 0; pass < n; ++pass) {
    last = n;
    for (const DirectedEdge& e : g.edges()) {
      const double candidate = dist[e.origin.index] + weight[e.id.index] + shift;
      if (candidate < dist[e.terminus.index]) {
        dist[e.terminus.index] = candidate;
        pred[e.terminus.index] = static_cast<std::ptrdiff_t>(e.id.index);
        last = e.terminus.index;
      }
    }
    if (last == n) return std::nullopt;
  }
  // An update in the n-th pass: walking n predecessors lands on the cycle.
  std::size_t x = last;
  for (std::size_t i = 0; i < n; ++i) x = g.origin(EdgeId{static_cast<std::size_t>(pred[x])}).index;
  Path cycle;
  std::size_t cur = x;
  do {
    const EdgeId e{static_cast<std::size_t>(pred[cur])};
    cycle.edges.push_back(e);
    cur = g.origin(e).index;
  } while (cur != x && cycle.edges.size() <= n);
  std::reverse(cycle.edges.begin(), cycle.edges.end());
  return cycle;
}

DistanceTable DistanceTable::floyd_warshall(std::size_t n, std::span<const WeightedEdge> edges, double level,
                                            double negative_tol) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  DistanceTable t;
  t.n_ = n;
  t.level_ = level;
  t.dist_.assign(n * n, inf);
  t.first_.assign(n * n, -1);
  t.edge_to_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const WeightedEdge& e = edges[i];
    t.edge_to_.push_back(e.to);
    double& d = t.dist_[e.from * n + e.to];
    if (e.weight < d) {
      d = e.weight;
      t.first_[e.from * n + e.to] = static_cast<std::ptrdiff_t>(i);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = t.dist_[i * n + k];
      if (dik == inf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double candidate = dik + t.dist_[k * n + j];
        if (candidate < t.dist_[i * n + j]) {
          t.dist_[i * n + j] = candidate;
          t.first_[i * n + j] = t.first_[i * n + k];
        }
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    const double d = t.dist_[x * n + x];
    if (d < -negative_tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "negative cycle at level " << level << ": S(x,x) = " << d << " at vertex " << x
          << " (level is below the critical value)";
      throw LevelError(msg.str());
    }
  }
  return t;
}

std::vector<std::size_t> DistanceTable::witness(std::size_t x, std::size_t y) const {
  std::vector<std::size_t> out;
  std::size_t cur = x;
  do {
    const std::ptrdiff_t e = first_.at(cur * n_ + y);
    if (e < 0) throw ConsistencyError("distance witness: no path recorded");
    out.push_back(static_cast<std::size_t>(e));
    cur = edge_to_[static_cast<std::size_t>(e)];
    if (out.size() > n_ + 1) throw ConsistencyError("distance witness does not terminate");
  } while (cur != y);
  return out;
}

Path DistanceTable::witness(VertexId x, VertexId y) const {
  Path p;
  for (std::size_t e : witness(x.index, y.index)) p.edges.push_back(EdgeId{e});
  return p;
}

DistanceTable distance_table(const Graph& g, const LevelWeights& w, double negative_tol) {
  std::vector<WeightedEdge> edges;
  edges.reserve(g.edge_count());
  for (const DirectedEdge& e : g.edges()) edges.push_back({e.origin.index, e.terminus.index, w[e.id]});
  return DistanceTable::floyd_warshall(g.vertex_count(), edges, w.level, negative_tol);
}

DistanceTable distance_table(const Network& network, double a) {
  return distance_table(network.graph(), compute_weights(network, a), network.tolerances().zero);
}

double min_cycle_value(const Graph& g, const LevelWeights& w) {
  if (auto cycle = find_negative_cycle(g, w.weight)) return path_weight(*cycle, w.weight);
  const DistanceTable t = distance_table(g, w, std::numeric_limits<double>::infinity());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < g.vertex_count(); ++x) best = std::min(best, t.at(x, x));
  return best;
}

CriticalValue critical_value(const Network& network) {
  const Graph& g = network.graph();
  const Tolerances& tol = network.tolerances();
  CriticalValue out;
  out.a0 = network.a0();
  out.below = std::numeric_limits<double>::quiet_NaN();

  auto negative_at = [&](double a) {
    ++out.probes;
    return find_negative_cycle(g, compute_weights(network, a).weight).has_value();
  };

  // Raising every edge by tol.zero / |V| makes each simple cycle at most
  // tol.zero dearer, so "no negative cycle after the shift" certifies
  // min_cycle_value(a0) >= -tol.zero.
  const double shift = tol.zero / static_cast<double>(std::max<std::size_t>(1, g.vertex_count()));
  ++out.probes;
  if (!find_negative_cycle(g, compute_weights(network, out.a0).weight, shift)) {
    out.value = out.a0;
    out.cycle_value = min_cycle_value(g, compute_weights(network, out.a0));
    return out;
  }

  double lo = out.a0;
  double step = 1.0;
  double hi = out.a0 + step;
  int doublings = 0;
  while (negative_at(hi)) {
    if (++doublings > 64) throw ConsistencyError("critical_value: bracket not found after 64 doublings");
    lo = hi;
    step *= 2.0;
    hi = out.a0 + step;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (negative_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= tol.level && min_cycle_value(g, compute_weights(network, hi)) <= tol.level) break;
  }
  out.value = hi;
  out.below = lo;
  out.cycle_value = min_cycle_value(g, compute_weights(network, hi));
  return out;
}

std::vector<std::string> validate_H4(const Network& network) {
  std::vector<std::string> warnings;
  const Graph& g = network.graph();
  const Tolerances& tol = network.tolerances();
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const ArcId arc{k};
    if (std::abs(network.constants(arc).a_gamma - network.a0()) > tol.level) continue;
    const auto [lo, hi] = network.hamiltonian(arc).bottom_range(tol);
    if (hi - lo > tol.level) {
      std::ostringstream msg;
      msg.precision(10);
      msg << "arc '" << g.arc(arc).name << "' attains a0 = " << network.a0()
          << " but s -> min_p H(s,p) is not constant (range " << lo << " .. " << hi
          << "); uniqueness at the bottom level is not guaranteed";
      warnings.push_back(msg.str());
    }
  }
  return warnings;
}

}  // namespace hjnet
