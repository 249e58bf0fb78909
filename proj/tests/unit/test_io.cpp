#include <doctest.h>

#include <cmath>
#include <string>

#include "hjnet/critical.hpp"
#include "hjnet/error.hpp"
#include "hjnet/io.hpp"

using namespace hjnet;

namespace {

const std::string kFixtures = HJNET_FIXTURE_DIR;

std::string with_arcs(const std::string& arcs) {
  return R"({"format_version": 1, "vertices": [{"id": "a"}, {"id": "b"}], "arcs": [)" + arcs + "]}";
}

std::string message_of(const std::string& text) {
  try {
    parse_network(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("fixture files") {
    const NetworkSpec tri = parse_network(read_file(kFixtures + "/triangle.json"));
    CHECK(tri.vertices.size() == 3);
    CHECK(tri.arcs.size() == 3);
    CHECK(tri.vertices[2].coords == std::vector<double>{0.5, 0.8});
    CHECK(tri.arcs[1].hamiltonian.f == ScalarFunction::constant(2.0));

    const NetworkSpec lp = parse_network(read_file(kFixtures + "/loop.json"));
    CHECK(lp.vertices.size() == 1);
    CHECK(lp.vertices[0].label == std::optional<std::string>("base"));
    REQUIRE(lp.arcs.size() == 1);
    CHECK(lp.arcs[0].closed());
    const Network net = build_network(lp, false);
    CHECK(net.graph().is_closed(ArcId{0}));
    CHECK(std::abs(critical_value(net).value - 1.0) <= 1e-8);
  }

  TEST_CASE("round trip") {
    const std::string text = with_arcs(R"(
      {"id": "p", "tail": "a", "head": "b", "hamiltonian": {"family": "tilted_eikonal",
        "b": {"type": "polynomial", "coefficients": [0.5, -1.25, 3]},
        "f": {"type": "fourier", "a0": 1, "a": [0.1, 0.2], "b": [0.3]}, "q": 2}},
      {"id": 7, "tail": "b", "head": "b", "hamiltonian": {"family": "tilted_eikonal",
        "b": {"type": "piecewise_linear", "nodes": [[0, 1], [0.3, -0.5], [1, 0.1]]}, "f": 0.1, "q": 1.5}}
    )");
    const NetworkSpec spec = parse_network(text);
    CHECK(spec.arcs[1].id == "7");
    const std::string once = serialize_network(spec);
    const NetworkSpec again = parse_network(once);
    CHECK(again == spec);
    CHECK(serialize_network(again) == once);

    NetworkSpec tuned = spec;
    tuned.tolerances = {{"tol_zero", 1e-7}, {"grid", 129}};
    CHECK(parse_network(serialize_network(tuned)) == tuned);
  }

  TEST_CASE("undeclared head names the arc") {
    const std::string text = with_arcs(R"({"id": "bad", "tail": "a", "head": "zz",
        "hamiltonian": {"family": "tilted_eikonal", "b": 0, "f": 0, "q": 1}})");
    CHECK_THROWS_AS(parse_network(text), ValidationError);
    const std::string msg = message_of(text);
    CHECK(msg.find("arcs[0]") != std::string::npos);
    CHECK(msg.find("'bad'") != std::string::npos);
    CHECK(msg.find("zz") != std::string::npos);
  }

  TEST_CASE("rejections") {
    CHECK_THROWS_AS(parse_network("{not json"), ParseError);
    CHECK_THROWS_AS(parse_network(R"({"format_version": 2, "vertices": [{"id": "a"}], "arcs": []})"), ParseError);
    CHECK_THROWS_AS(parse_network(R"({"format_version": 1, "vertices": [{"id": "a", "colour": 1}], "arcs": []})"),
                    ParseError);
    CHECK_THROWS_AS(parse_network(R"({"format_version": 1, "vertices": [{"id": "a"}, {"id": "a"}], "arcs": []})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_network(with_arcs(R"({"id": "g", "tail": "a", "head": "b",
        "hamiltonian": {"family": "tilted_eikonal", "b": 0, "f": 0, "q": 0.5}})")),
                    ValidationError);
    CHECK_THROWS_AS(parse_network(with_arcs(R"({"id": "g", "tail": "a", "head": "b",
        "hamiltonian": {"family": "tilted_eikonal", "b": "zero", "f": 0, "q": 1}})")),
                    ParseError);
    CHECK_THROWS_AS(parse_network(with_arcs(R"({"id": "g", "tail": "a", "head": "b",
        "hamiltonian": {"family": "black_box", "b": 0, "f": 0, "q": 1}})")),
                    ParseError);
    const std::string msg = message_of(with_arcs(R"({"id": "g", "tail": "a", "head": "b",
        "hamiltonian": {"family": "tilted_eikonal", "b": 0, "f": {"type": "constant"}, "q": 1}})"));
    CHECK(msg.find("arcs[0].hamiltonian.f") != std::string::npos);
  }

  TEST_CASE("tolerance resolution") {
    NetworkSpec spec = parse_network(read_file(kFixtures + "/triangle.json"));
    spec.tolerances = {{"tol_zero", 1e-7}, {"grid", 129}};
    const Tolerances tol = resolve_tolerances(spec, false);
    CHECK(tol.zero == 1e-7);
    CHECK(tol.grid == 129);
    CHECK(tol.level == Tolerances{}.level);
    spec.tolerances = {{"tol_nope", 1.0}};
    CHECK_THROWS_AS(resolve_tolerances(spec, false), ValidationError);
    spec.tolerances = {{"tol_zero", -1.0}};
    CHECK_THROWS_AS(resolve_tolerances(spec, false), ValidationError);
  }

  TEST_CASE("traces") {
    const TraceSpec t = parse_trace(R"({"level": "critical", "entries": [
        {"vertex": "x1", "value": 0}, {"point": {"arc": "g2", "s": 0.25}, "value": -1.5}]})");
    CHECK_FALSE(t.level.has_value());
    REQUIRE(t.entries.size() == 2);
    CHECK(t.entries[0].vertex == std::optional<std::string>("x1"));
    CHECK(t.entries[1].point == std::optional<std::pair<std::string, double>>({"g2", 0.25}));
    CHECK(t.entries[1].value == -1.5);
    CHECK(parse_trace(R"({"level": 0.5, "entries": []})").level == std::optional<double>(0.5));
    CHECK_THROWS_AS(parse_trace(R"({"level": "high", "entries": []})"), ParseError);
    CHECK_THROWS_AS(parse_trace(R"({"level": 0, "entries": [{"vertex": "x", "point": {"arc": "g", "s": 0.1}, "value": 0}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_trace(R"({"level": 0, "entries": [{"vertex": "x"}]})"), ParseError);
  }

  TEST_CASE("functions") {
    FunctionSpec f;
    f.level = -0.75;
    f.values = {{"x1", 0.1}, {"x2", 1.0 / 3.0}};
    f.points = {{"g1", 0.5, -2.0}};
    const std::string text = serialize_function(f);
    CHECK(parse_function(text) == f);
    CHECK(serialize_function(parse_function(text)) == text);
  }

  TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  }
}
