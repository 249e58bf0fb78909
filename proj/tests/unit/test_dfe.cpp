#include <doctest.h>

#include <cmath>
#include <random>

#include "hjnet/dfe.hpp"
#include "hjnet/error.hpp"
#include "networks.hpp"

using namespace hjnet;
using namespace hjnet::testing;

namespace {

VertexFunction constant(std::size_t n, double value, double level) { return {level, std::vector<double>(n, value)}; }

double max_gap(const VertexFunction& u, const VertexFunction& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) m = std::max(m, std::abs(u.values[i] - v.values[i]));
  return m;
}

}  // namespace

TEST_SUITE("dfe") {
  TEST_CASE("subsolution checks") {
    const Network flat = all_abs();
    const Graph& g = flat.graph();
    CHECK(check_subsolution(g, constant(3, 0.0, 1.0), compute_weights(flat, 1.0), 1e-9).ok);
    CHECK(check_subsolution(g, constant(3, 0.0, 0.0), compute_weights(flat, 0.0), 1e-9).ok);

    const Network tri = triangle();
    const CriticalData d = analyze_critical(tri);
    CHECK(check_subsolution(tri.graph(), distance_from(d.table, VertexId{0}), d.weights, 1e-9).ok);

    const VertexFunction bad{d.critical.value, {0.0, 5.0, 0.0}};
    const auto verdict = check_subsolution(tri.graph(), bad, d.weights, 1e-9);
    CHECK_FALSE(verdict.ok);
    REQUIRE_FALSE(verdict.violations.empty());
    CHECK(verdict.violations[0].excess > 0.0);
  }

  TEST_CASE("solution checks") {
    const Network tri = triangle();
    const CriticalData d = analyze_critical(tri);
    const VertexFunction u = distance_from(d.table, VertexId{0});
    const auto at_c = check_solution(tri.graph(), u, d.weights, 1e-9);
    CHECK(at_c.ok);
    CHECK(at_c.achieving.size() == 3);

    const auto above = check_solution(tri.graph(), u, compute_weights(tri, 0.0), 1e-9);
    CHECK_FALSE(above.ok);
    CHECK(std::find(above.failing.begin(), above.failing.end(), VertexId{0}) != above.failing.end());

    const Network lp = loop();
    const CriticalData dl = analyze_critical(lp);
    const auto loop_verdict = check_solution(lp.graph(), constant(1, 0.0, dl.critical.value), dl.weights, 1e-6);
    CHECK(loop_verdict.ok);
    CHECK(loop_verdict.achieving[0] == EdgeId{0});  // sigma(-e) reached through e's reverse

    CHECK_THROWS_AS(check_solution(tri.graph(), VertexFunction{-1.0, {0.0, 5.0, 0.0}}, d.weights, 1e-9), MisuseError);
  }

  TEST_CASE("checker equivalence") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> noise(0.0, 0.5);
    for (const Network& net : {triangle(), two_arc(), all_abs(), loop()}) {
      const CriticalData d = analyze_critical(net);
      const double a = d.critical.value + 0.3;
      const LevelWeights w = compute_weights(net, a);
      const DistanceTable t = distance_table(net.graph(), w, net.tolerances().zero);
      for (int i = 0; i < 50; ++i) {
        VertexFunction u = distance_from(t, VertexId{0});
        for (double& x : u.values) x += noise(rng);
        const bool by_edges = check_subsolution(net.graph(), u, w, 1e-9).ok;
        const bool by_pairs = satisfies_distance_bounds(u, t, 1e-9 * static_cast<double>(net.graph().edge_count()));
        CHECK(by_edges == by_pairs);
      }
    }
  }

  TEST_CASE("admissibility") {
    const Network tri = triangle();
    const CriticalData d = analyze_critical(tri);
    CHECK(check_admissible(Trace{d.critical.value, {{VertexId{0}, 4.0}, {VertexId{1}, 4.0}}}, d.table, 1e-6).ok);
    const double s12 = d.table(VertexId{0}, VertexId{1});
    const auto bad = check_admissible(Trace{d.critical.value, {{VertexId{0}, 0.0}, {VertexId{1}, s12 + 1.0}}}, d.table, 1e-6);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].x == VertexId{1});
    CHECK(bad.violations[0].excess == doctest::Approx(1.0));
  }

  TEST_CASE("critical solver") {
    const Network tri = triangle();
    const CriticalData d = analyze_critical(tri);
    const double tol = tri.tolerances().zero;
    const Trace zero{d.critical.value, {{VertexId{0}, 0.0}, {VertexId{1}, 0.0}}};
    const VertexFunction v = solve_critical(zero, d.table, d.aubry, tol);
    CHECK(v.values[0] == 0.0);
    CHECK(v.values[1] == 0.0);
    CHECK(v.values[2] == std::min(d.table(VertexId{0}, VertexId{2}), d.table(VertexId{1}, VertexId{2})));
    CHECK(check_solution(tri.graph(), v, d.weights, tol).ok);

    const VertexFunction single = solve_critical(Trace{d.critical.value, {{VertexId{1}, 2.5}}}, d.table, d.aubry, tol);
    for (std::size_t x = 0; x < 3; ++x) {
      const double expected = x == 1 ? 2.5 : 2.5 + d.table.at(1, x);
      CHECK(single.values[x] == expected);
    }

    // Idempotence on the Aubry restriction.
    Trace restricted{d.critical.value, {}};
    for (VertexId y : d.aubry.vertices) restricted.entries.emplace_back(y, single(y));
    CHECK(max_gap(solve_critical(restricted, d.table, d.aubry, tol), single) == 0.0);

    const Network lp = loop();
    const CriticalData dl = analyze_critical(lp);
    CHECK(solve_critical(Trace{dl.critical.value, {{VertexId{0}, 7.0}}}, dl.table, dl.aubry, tol).values[0] == 7.0);

    CHECK_THROWS_AS(solve_critical(Trace{d.critical.value, {{VertexId{2}, 0.0}}}, d.table, d.aubry, tol), MisuseError);
    CHECK_THROWS_AS(solve_critical(Trace{d.critical.value, {{VertexId{0}, 0.0}, {VertexId{1}, 9.0}}}, d.table,
                                   d.aubry, tol),
                    AdmissibilityError);
    CHECK_THROWS_AS(solve_critical(Trace{d.critical.value + 0.5, {{VertexId{0}, 0.0}}}, d.table, d.aubry, tol),
                    MisuseError);
  }

  TEST_CASE("relaxed solver stays below the data") {
    const Network tri = triangle();
    const CriticalData d = analyze_critical(tri);
    const Trace g{d.critical.value, {{VertexId{2}, 0.0}, {VertexId{0}, 10.0}}};
    const VertexFunction v = solve_relaxed(g, d.table);
    CHECK(v.values[0] <= 10.0);
    CHECK(v.values[0] == doctest::Approx(d.table(VertexId{2}, VertexId{0})));
    CHECK(check_subsolution(tri.graph(), v, d.weights, 1e-9).ok);
  }

  TEST_CASE("supercritical solver") {
    const Network tri = triangle();
    const CriticalData d = analyze_critical(tri);
    const double c = d.critical.value;
    const LevelWeights w = compute_weights(tri, 0.0);
    const DistanceTable t = distance_table(tri.graph(), w, tri.tolerances().zero);
    const VertexFunction v = solve_supercritical(Trace{0.0, {{VertexId{0}, 0.0}}}, t, c, 1e-6);
    CHECK(v.values[0] == 0.0);
    CHECK(v.values[1] == t.at(0, 1));
    CHECK(v.values[2] == t.at(0, 2));
    CHECK(check_subsolution(tri.graph(), v, w, 1e-9).ok);
    const auto sol = check_solution(tri.graph(), v, w, 1e-9);
    CHECK(std::find(sol.failing.begin(), sol.failing.end(), VertexId{1}) == sol.failing.end());
    CHECK(std::find(sol.failing.begin(), sol.failing.end(), VertexId{2}) == sol.failing.end());

    const Trace everywhere{0.0, {{VertexId{0}, 0.0}, {VertexId{1}, 0.5}, {VertexId{2}, 1.0}}};
    const VertexFunction same = solve_supercritical(everywhere, t, c, 1e-6);
    CHECK(same.values == std::vector<double>{0.0, 0.5, 1.0});

    const VertexFunction lower = solve_supercritical(Trace{0.0, {{VertexId{0}, 0.0}, {VertexId{2}, 1.0}}}, t, c, 1e-6);
    const VertexFunction upper = solve_supercritical(Trace{0.0, {{VertexId{0}, 0.5}, {VertexId{2}, 1.2}}}, t, c, 1e-6);
    for (std::size_t x = 0; x < 3; ++x) CHECK(lower.values[x] <= upper.values[x]);

    CHECK_THROWS_AS(solve_supercritical(Trace{0.0, {}}, t, c, 1e-6), MisuseError);
    CHECK_THROWS_AS(solve_supercritical(Trace{c, {{VertexId{0}, 0.0}}}, d.table, c, 1e-6), MisuseError);
  }

  TEST_CASE("above the critical value no singleton solve is a solution") {
    for (const Network& net : {triangle(), loop(), two_arc(), all_abs()}) {
      const CriticalData d = analyze_critical(net);
      const double a = d.critical.value + 0.1;
      const LevelWeights w = compute_weights(net, a);
      const DistanceTable t = distance_table(net.graph(), w, net.tolerances().zero);
      for (std::size_t y = 0; y < net.graph().vertex_count(); ++y) {
        const VertexFunction v = solve_supercritical(Trace{a, {{VertexId{y}, 0.0}}}, t, d.critical.value, 1e-6);
        const auto verdict = check_solution(net.graph(), v, w, net.tolerances().zero);
        CHECK_FALSE(verdict.ok);
        CHECK(std::find(verdict.failing.begin(), verdict.failing.end(), VertexId{y}) != verdict.failing.end());
      }
    }
  }

  TEST_CASE("strict subsolution") {
    const Network tri = triangle();
    const CriticalData d = analyze_critical(tri);
    const auto strict = strict_subsolution(tri.graph(), d.weights, d.table, d.aubry);
    CHECK(std::abs(strict.slack[0]) <= 1e-9);
    CHECK(std::abs(strict.slack[1]) <= 1e-9);
    for (std::size_t e = 2; e < 6; ++e) CHECK(strict.slack[e] > 0.0);

    const Network flat = all_abs();
    const CriticalData df = analyze_critical(flat);
    for (double s : strict_subsolution(flat.graph(), df.weights, df.table, df.aubry).slack) CHECK(std::abs(s) <= 1e-9);

    const Network lp = loop();
    const CriticalData dl = analyze_critical(lp);
    const auto ls = strict_subsolution(lp.graph(), dl.weights, dl.table, dl.aubry);
    CHECK(ls.slack[0] == doctest::Approx(4.0));
    CHECK(std::abs(ls.slack[1]) <= 1e-8);
  }
}
