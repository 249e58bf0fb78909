#include "networks.hpp"

#include <algorithm>
#include <limits>

#include "hjnet/critical.hpp"

namespace hjnet::testing {

Network make_network(std::size_t vertices, const std::vector<ArcDef>& arcs, Tolerances tol) {
  std::vector<VertexInfo> vs;
  for (std::size_t i = 0; i < vertices; ++i) vs.push_back({"x" + std::to_string(i + 1), std::nullopt, {}});
  std::vector<ArcInfo> as;
  std::vector<ArcHamiltonian> hs;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    as.push_back({"g" + std::to_string(k + 1), VertexId{arcs[k].tail}, VertexId{arcs[k].head}});
    hs.emplace_back(arcs[k].h, arcs[k].tail == arcs[k].head);
  }
  return Network(Graph::build(std::move(vs), std::move(as)), std::move(hs), tol);
}

TiltedEikonal tilted(double b, double f, double q) {
  return {ScalarFunction::constant(b), ScalarFunction::constant(f), q};
}

Network triangle() { return make_network(3, {{0, 1, tilted(0, 1)}, {1, 2, tilted(0, 2)}, {2, 0, tilted(0, 3)}}); }

Network loop() { return make_network(1, {{0, 0, tilted(2, 1)}}); }

Network two_arc() { return make_network(2, {{0, 1, tilted(2, 1)}, {1, 0, tilted(2, 1)}}); }

Network all_abs() { return make_network(3, {{0, 1, tilted(0, 0)}, {1, 2, tilted(0, 0)}}); }

namespace {

ScalarFunction random_fourier(std::mt19937_64& rng, double a0_lo, double a0_hi, double amp) {
  std::uniform_real_distribution<double> a0(a0_lo, a0_hi);
  std::uniform_real_distribution<double> c(-amp, amp);
  std::uniform_int_distribution<int> modes(1, 2);
  const int m = modes(rng);
  std::vector<double> cs, ss;
  for (int k = 0; k < m; ++k) {
    cs.push_back(c(rng));
    ss.push_back(c(rng));
  }
  return ScalarFunction::fourier(a0(rng), cs, ss);
}

}  // namespace

Network random_network(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_arcs) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_vertices)(rng);
    const std::size_t lo = std::max<std::size_t>(1, n - 1);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(lo, max_arcs)(rng);
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (std::size_t v = 1; v < n; ++v) {
      const std::size_t parent = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
      ends.emplace_back(parent, v);
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (ends.size() < m) ends.emplace_back(pick(rng), pick(rng));
    std::shuffle(ends.begin(), ends.end(), rng);

    std::vector<ArcDef> arcs;
    for (auto [t, h] : ends) {
      if (unit(rng) < 0.5) std::swap(t, h);
      TiltedEikonal ham;
      ham.b = random_fourier(rng, -1.0, 1.0, 0.5);
      if (unit(rng) < 0.5) {
        ham.f = ScalarFunction::constant(std::uniform_real_distribution<double>(-1.0, 2.0)(rng));
      } else {
        ham.f = random_fourier(rng, 0.0, 1.5, 0.4);
      }
      ham.q = unit(rng) < 0.5 ? 1.0 : 2.0;
      arcs.push_back({t, h, ham});
    }
    Network net = make_network(n, arcs);
    if (validate_H4(net).empty()) return net;
  }
}

Network reverse_by_parameters(const Network& network) {
  const Graph& g = network.graph();
  std::vector<VertexInfo> vs;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) vs.push_back(g.vertex(VertexId{i}));
  std::vector<ArcInfo> as;
  std::vector<ArcHamiltonian> hs;
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const ArcInfo& a = g.arc(ArcId{k});
    as.push_back({a.name, a.head, a.tail});
    const auto& h = std::get<TiltedEikonal>(network.hamiltonian(ArcId{k}).family());
    hs.emplace_back(TiltedEikonal{h.b.reflected().negated(), h.f.reflected(), h.q}, a.head == a.tail);
  }
  return Network(Graph::build(std::move(vs), std::move(as)), std::move(hs), network.tolerances());
}

double brute_force_distance(const Graph& g, const std::vector<double>& weight, VertexId x, VertexId y) {
  double best = std::numeric_limits<double>::infinity();
  for (const Path& p : enumerate_simple_paths(g, x, y)) best = std::min(best, path_weight(p, weight));
  return best;
}

}  // namespace hjnet::testing
