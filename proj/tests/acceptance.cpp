// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hjnet/arc_extension.hpp"
#include "hjnet/aubry.hpp"
#include "hjnet/critical.hpp"
#include "hjnet/dfe.hpp"
#include "hjnet/error.hpp"
#include "networks.hpp"

using namespace hjnet;
using hjnet::testing::random_network;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Sample {
  Network network;
  CriticalData critical;
};

std::vector<Sample>& random_samples() {
  static std::vector<Sample> samples = [] {
    std::mt19937_64 rng(20240611);
    std::vector<Sample> out;
    for (int i = 0; i < 50; ++i) {
      Network net = random_network(rng);
      CriticalData data = analyze_critical(net);
      out.push_back({std::move(net), std::move(data)});
    }
    return out;
  }();
  return samples;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string precise(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Trace singleton(double level, VertexId y, double value) {
  Trace t;
  t.level = level;
  t.entries.emplace_back(y, value);
  return t;
}

Trace restrict_to(const VertexFunction& v, const std::vector<VertexId>& support) {
  Trace t;
  t.level = v.level;
  for (VertexId y : support) t.entries.emplace_back(y, v(y));
  return t;
}

// 1. Black-box sigma roots against b(s) +- (a + f(s))^(1/q).
Outcome sigma_oracle() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> coef(-0.6, 0.6);
  double worst = 0.0;
  int checked = 0;
  for (int family = 0; family < 10; ++family) {
    const ScalarFunction b = ScalarFunction::fourier(coef(rng), {coef(rng), coef(rng)}, {coef(rng), coef(rng)});
    const ScalarFunction f = ScalarFunction::fourier(coef(rng), {coef(rng)}, {coef(rng)});
    const double q = family % 2 == 0 ? 1.0 : 2.0;
    const double bound_b = b.abs_bound();
    const double bound_f = f.abs_bound();
    BlackBox box;
    box.evaluate = [b, f, q](double s, double p) { return std::pow(std::abs(p - b(s)), q) - f(s); };
    box.radius = [=](double a) { return bound_b + std::pow(std::max(a + bound_f, 0.0), 1.0 / q) + 1.0; };
    const ArcHamiltonian h(std::move(box));
    const Tolerances tol;
    for (int i = 0; i < 10; ++i) {
      const double s = unit(rng);
      const double a = -f(s) + 0.05 + 3.0 * unit(rng);
      const double r = std::pow(a + f(s), 1.0 / q);
      const SigmaPair got = h.sigma_pm(a, s, tol);
      worst = std::max({worst, std::abs(got.minus - (b(s) - r)), std::abs(got.plus - (b(s) + r))});
      ++checked;
    }
  }
  return {worst <= 1e-8, std::to_string(checked) + " samples, max error " + fmt(worst)};
}

// 2. Critical values of the loop and triangle fixtures.
Outcome critical_fixtures() {
  const double loop_c = critical_value(hjnet::testing::loop()).value;
  const double tri_c = critical_value(hjnet::testing::triangle()).value;
  const bool ok = std::abs(loop_c - 1.0) <= 1e-6 && std::abs(tri_c + 1.0) <= 1e-6;
  return {ok, "loop c = " + precise(loop_c) + ", triangle c = " + precise(tri_c)};
}

// 3. Floyd-Warshall against exhaustive simple-path enumeration.
Outcome distance_oracle() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> bump(0.0, 2.0);
  double worst = 0.0;
  int tables = 0;
  for (const Sample& sample : random_samples()) {
    const Graph& g = sample.network.graph();
    for (int k = 0; k < 5; ++k) {
      const double a = sample.critical.critical.value + bump(rng);
      const LevelWeights w = compute_weights(sample.network, a);
      const DistanceTable table = distance_table(g, w, sample.network.tolerances().zero);
      for (std::size_t x = 0; x < g.vertex_count(); ++x) {
        for (std::size_t y = 0; y < g.vertex_count(); ++y) {
          const double oracle = hjnet::testing::brute_force_distance(g, w.weight, VertexId{x}, VertexId{y});
          worst = std::max(worst, std::abs(table.at(x, y) - oracle));
        }
      }
      ++tables;
    }
  }
  return {worst <= 1e-10, std::to_string(tables) + " tables, max deviation " + fmt(worst)};
}

// 4. Nonempty projected Aubry set; every critical subsolution has du = sigma_c on Aubry edges.
Outcome aubry_rigidity() {
  double worst = 0.0;
  bool nonempty = true;
  bool subsolutions = true;
  for (const Sample& sample : random_samples()) {
    const Graph& g = sample.network.graph();
    const CriticalData& d = sample.critical;
    nonempty = nonempty && !d.aubry.vertices.empty();
    std::vector<VertexFunction> family;
    for (std::size_t y = 0; y < g.vertex_count(); ++y) {
      family.push_back(distance_from(d.table, VertexId{y}));
      family.push_back(negative_distance_to(d.table, VertexId{y}));
    }
    family.push_back(strict_subsolution(g, d.weights, d.table, d.aubry).w);
    for (const VertexFunction& u : family) {
      subsolutions = subsolutions && check_subsolution(g, u, d.weights, 1e-6).ok;
      for (EdgeId e : d.aubry.edges) worst = std::max(worst, std::abs(coboundary(g, u, e) - d.weights[e]));
    }
  }
  const bool ok = nonempty && subsolutions && worst <= 1e-6;
  return {ok, std::string(nonempty ? "all nonempty" : "EMPTY Aubry set") + ", max |du - sigma_c| " + fmt(worst) +
                  (subsolutions ? "" : ", some function not a subsolution")};
}

// 5. Solutions from Aubry singletons; reproduction from the Aubry restriction; none above c.
Outcome existence_uniqueness() {
  int solved = 0, failures = 0, above_rejected = 0, above_total = 0;
  double reproduce = 0.0;
  for (const Sample& sample : random_samples()) {
    const Graph& g = sample.network.graph();
    const CriticalData& d = sample.critical;
    const double c = d.critical.value;
    for (VertexId y : d.aubry.vertices) {
      const VertexFunction v = solve_critical(singleton(d.table.level(), y, 0.0), d.table, d.aubry, 1e-6);
      if (!check_solution(g, v, d.weights, 1e-6).ok) ++failures;
      const VertexFunction again = solve_critical(restrict_to(v, d.aubry.vertices), d.table, d.aubry, 1e-6);
      reproduce = std::max(reproduce, max_abs_diff(v.values, again.values));
      ++solved;
    }
    const double above = c + 0.1;
    const LevelWeights w = compute_weights(sample.network, above);
    const DistanceTable table = distance_table(g, w, sample.network.tolerances().zero);
    for (std::size_t y = 0; y < g.vertex_count(); ++y) {
      VertexFunction v = distance_from(table, VertexId{y});
      v.values[y] = 0.0;
      ++above_total;
      if (!check_solution(g, v, w, 1e-6).ok) ++above_rejected;
    }
  }
  const bool ok = failures == 0 && reproduce <= 1e-10 && above_rejected == above_total;
  return {ok, std::to_string(solved - failures) + "/" + std::to_string(solved) + " critical solutions pass, " +
                  "re-solve deviation " + fmt(reproduce) + ", " + std::to_string(above_rejected) + "/" +
                  std::to_string(above_total) + " rejected at c + 0.1"};
}

// 6. PDE residuals of extended solutions and of C1 strict subsolutions.
Outcome pde_residual() {
  double worst_solution = 0.0;
  double worst_strict = -std::numeric_limits<double>::infinity();
  int strict_arcs = 0;
  for (const Sample& sample : random_samples()) {
    const Graph& g = sample.network.graph();
    const CriticalData& d = sample.critical;
    for (VertexId y : d.aubry.vertices) {
      const VertexFunction v = solve_critical(singleton(d.table.level(), y, 0.0), d.table, d.aubry, 1e-6);
      for (const ArcResidual& r : residual_check(extend_vertex_solution(sample.network, v))) {
        worst_solution = std::max(worst_solution, r.max_abs);
      }
    }
    const StrictSubsolution strict = strict_subsolution(g, d.weights, d.table, d.aubry);
    const C1Subsolution smooth = c1_subsolution(sample.network, strict.w);
    for (const ArcResidual& r : residual_check(smooth.function)) {
      if (d.aubry.arcs[r.arc.index].in_aubry()) continue;
      worst_strict = std::max(worst_strict, r.max_signed);
      ++strict_arcs;
    }
  }
  const bool ok = worst_solution <= 1e-6 && worst_strict < -1e-8;
  return {ok, "solution residual " + fmt(worst_solution) + ", strict signed residual <= " + fmt(worst_strict) +
                  " on " + std::to_string(strict_arcs) + " non-Aubry arcs"};
}

// 7. Maximal subsolutions from interior points are solutions iff the arc is in the network Aubry set.
Outcome aubry_characterization() {
  int agree = 0, total = 0;
  std::string mismatches;
  const std::vector<std::pair<std::string, Network>> fixtures = {
      {"triangle", hjnet::testing::triangle()}, {"loop", hjnet::testing::loop()}};
  for (const auto& [name, net] : fixtures) {
    const CriticalData d = analyze_critical(net);
    const Graph& g = net.graph();
    for (std::size_t k = 0; k < g.arc_count(); ++k) {
      for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const NetworkPoint y = NetworkPoint::on_arc(g, ArcId{k}, s);
        const NetworkFunction nf = maximal_subsolution_from_point(net, y, 0.0, d.table.level());
        const bool solution = check_network_solution(net, nf, 1e-6).ok;
        ++total;
        if (solution == d.aubry.arcs[k].in_aubry()) {
          ++agree;
        } else {
          mismatches += " " + name + ":" + g.arc(ArcId{k}).name + "@" + fmt(s);
        }
      }
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree" + mismatches};
}

// 8. Critical solutions are nonexpansive in the trace.
Outcome nonexpansive() {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> offset(-2.0, 2.0);
  double worst = -std::numeric_limits<double>::infinity();
  int pairs = 0;
  std::vector<const Sample*> pool;
  for (const Sample& s : random_samples()) {
    if (s.critical.aubry.vertices.size() >= 2) pool.push_back(&s);
  }
  if (pool.empty()) return {false, "no random network with two Aubry vertices"};
  // Admissible traces: restrictions of min_z r_z + S_c(z, .) over Aubry vertices z.
  auto draw = [&](const CriticalData& d) {
    Trace t;
    t.level = d.table.level();
    std::vector<double> r;
    for (std::size_t i = 0; i < d.aubry.vertices.size(); ++i) r.push_back(offset(rng));
    for (VertexId y : d.aubry.vertices) {
      double g = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < d.aubry.vertices.size(); ++i) g = std::min(g, r[i] + d.table(d.aubry.vertices[i], y));
      t.entries.emplace_back(y, g);
    }
    return t;
  };
  for (int i = 0; i < 20; ++i) {
    const CriticalData& d = pool[static_cast<std::size_t>(i) % pool.size()]->critical;
    const Trace g1 = draw(d);
    const Trace g2 = draw(d);
    const VertexFunction v1 = solve_critical(g1, d.table, d.aubry, 1e-6);
    const VertexFunction v2 = solve_critical(g2, d.table, d.aubry, 1e-6);
    double dg = 0.0;
    for (std::size_t k = 0; k < g1.entries.size(); ++k) {
      dg = std::max(dg, std::abs(g1.entries[k].second - g2.entries[k].second));
    }
    worst = std::max(worst, max_abs_diff(v1.values, v2.values) - dg);
    ++pairs;
  }
  return {worst <= 1e-9, std::to_string(pairs) + " pairs, max(|v1 - v2|) - max(|g1 - g2|) = " + fmt(worst)};
}

// 9. Weights and extensions through the reversed parametrisation.
Outcome reversal() {
  std::vector<Network> fixtures = {hjnet::testing::triangle(), hjnet::testing::loop(), hjnet::testing::two_arc(),
                                   hjnet::testing::all_abs()};
  std::mt19937_64 rng(31);
  for (int i = 0; i < 3; ++i) fixtures.push_back(random_network(rng, 4, 6));
  double worst_weight = 0.0;
  double worst_profile = 0.0;
  for (const Network& net : fixtures) {
    const Graph& g = net.graph();
    const Network explicit_rev = hjnet::testing::reverse_by_parameters(net);
    const Network view_rev = net.reversed();
    const CriticalData d = analyze_critical(net);
    const double c = d.table.level();
    for (double a : {c, c + 0.5}) {
      const LevelWeights w = compute_weights(net, a);
      for (const Network* rev : {&explicit_rev, &view_rev}) {
        const LevelWeights wr = compute_weights(*rev, a);
        for (std::size_t k = 0; k < g.arc_count(); ++k) {
          const ArcId arc{k};
          worst_weight = std::max({worst_weight, std::abs(wr[g.forward_edge(arc)] - w[g.backward_edge(arc)]),
                                   std::abs(wr[g.backward_edge(arc)] - w[g.forward_edge(arc)])});
        }
      }
      const DistanceTable table = a == c ? d.table : distance_table(net, a);
      const VertexFunction u = distance_from(table, d.aubry.vertices.front());
      const NetworkFunction nf = extend_vertex_solution(net, u);
      const NetworkFunction nr = extend_vertex_solution(explicit_rev, u);
      for (std::size_t k = 0; k < g.arc_count(); ++k) {
        for (int i = 0; i <= 100; ++i) {
          const double s = i / 100.0;
          worst_profile = std::max(worst_profile, std::abs(nf.profiles[k].value(s) - nr.profiles[k].value(1.0 - s)));
        }
      }
    }
  }
  const bool ok = worst_weight <= 1e-8 && worst_profile <= 1e-8;
  return {ok, std::to_string(fixtures.size()) + " networks, weight deviation " + fmt(worst_weight) +
                  ", profile deviation " + fmt(worst_profile)};
}

// 10. Supercritical boundary problems: solution off V', uniqueness under perturbation.
Outcome supercritical() {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> offset(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int problems = 0, passed = 0, perturbed_rejected = 0, perturbed_total = 0;
  double reproduce = 0.0;
  for (const Sample& sample : random_samples()) {
    const Graph& g = sample.network.graph();
    const std::size_t n = g.vertex_count();
    const double c = sample.critical.critical.value;
    const double a = c + 0.5;
    const DistanceTable table = distance_table(sample.network, a);
    const LevelWeights w = compute_weights(sample.network, a);

    std::vector<char> in_support(n, 0);
    for (std::size_t x = 0; x < n; ++x) in_support[x] = unit(rng) < 0.5;
    in_support[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1;
    std::vector<double> r(n);
    for (double& v : r) v = offset(rng);
    Trace t;
    t.level = a;
    for (std::size_t y = 0; y < n; ++y) {
      if (!in_support[y]) continue;
      double gy = std::numeric_limits<double>::infinity();
      for (std::size_t z = 0; z < n; ++z) gy = std::min(gy, r[z] + table.at(z, y));
      t.entries.emplace_back(VertexId{y}, gy);
    }

    const VertexFunction v = solve_supercritical(t, table, c, 1e-6);
    ++problems;
    bool ok = check_subsolution(g, v, w, 1e-6).ok;
    if (ok) {
      for (VertexId x : check_solution(g, v, w, 1e-6).failing) ok = ok && in_support[x.index];
    }
    if (ok) ++passed;

    VertexFunction perturbed = v;
    bool any_free = false;
    for (std::size_t x = 0; x < n; ++x) {
      if (in_support[x]) continue;
      perturbed.values[x] += unit(rng) < 0.5 ? 1e-3 : -1e-3;
      any_free = true;
    }
    const VertexFunction again = solve_supercritical(restrict_to(perturbed, [&] {
                                                       std::vector<VertexId> s;
                                                       for (const auto& e : t.entries) s.push_back(e.first);
                                                       return s;
                                                     }()),
                                                     table, c, 1e-6);
    reproduce = std::max(reproduce, max_abs_diff(v.values, again.values));
    if (any_free) {
      ++perturbed_total;
      bool still_solution = check_subsolution(g, perturbed, w, 1e-6).ok;
      if (still_solution) {
        for (VertexId x : check_solution(g, perturbed, w, 1e-6).failing) {
          still_solution = still_solution && in_support[x.index];
        }
      }
      if (!still_solution) ++perturbed_rejected;
    }
  }
  const bool ok = passed == problems && reproduce <= 1e-9 && perturbed_rejected == perturbed_total;
  return {ok, std::to_string(passed) + "/" + std::to_string(problems) + " solve off V', re-solve deviation " +
                  fmt(reproduce) + ", " + std::to_string(perturbed_rejected) + "/" +
                  std::to_string(perturbed_total) + " perturbations rejected"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"sigma roots match the closed form", sigma_oracle},
      {"critical value of loop and triangle", critical_fixtures},
      {"distance table equals simple-path enumeration", distance_oracle},
      {"Aubry set nonempty and rigid", aubry_rigidity},
      {"existence and uniqueness at c", existence_uniqueness},
      {"PDE residuals", pde_residual},
      {"point subsolutions characterize the Aubry arcs", aubry_characterization},
      {"nonexpansiveness in the trace", nonexpansive},
      {"reversal invariance", reversal},
      {"supercritical boundary problems", supercritical},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu  %s: %s (%.2fs)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    if (!out.pass) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
