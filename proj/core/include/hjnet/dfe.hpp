#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hjnet/aubry.hpp"
#include "hjnet/critical.hpp"

namespace hjnet {

/// A real function on the vertices, tagged with the level it refers to.
struct VertexFunction {
  double level = 0.0;
  std::vector<double> values;  // indexed by VertexId

  double operator()(VertexId x) const { return values.at(x.index); }
};

/// Coboundary du(e) = u(t(e)) - u(o(e)).
double coboundary(const Graph& g, const VertexFunction& u, EdgeId e);

/// Boundary data on a subset of vertices.
struct Trace {
  double level = 0.0;
  std::vector<std::pair<VertexId, double>> entries;
};

struct EdgeViolation {
  EdgeId edge;
  double excess = 0.0;  // du(e) - sigma(e) > tol
};

struct SubsolutionVerdict {
  bool ok = true;
  std::vector<EdgeViolation> violations;
};

struct SolutionVerdict {
  bool ok = true;
  /// Per vertex: the star edge attaining min u(t(e)) + sigma(-e) (lowest id on ties).
  std::vector<EdgeId> achieving;
  /// Per vertex: that minimum minus u(x).
  std::vector<double> defect;
  std::vector<VertexId> failing;
};

struct PairViolation {
  VertexId x;
  VertexId y;
  double excess = 0.0;  // g(x) - g(y) - S(y,x) > tol
};

struct AdmissibilityVerdict {
  bool ok = true;
  std::vector<PairViolation> violations;
};

/// du(e) <= sigma(e) + tol on every directed edge.
SubsolutionVerdict check_subsolution(const Graph& g, const VertexFunction& u, const LevelWeights& w, double tol);

/// u(x) = min over the star of u(t(e)) + sigma(-e), within tol, at every
/// vertex. MisuseError when u is not a subsolution.
SolutionVerdict check_solution(const Graph& g, const VertexFunction& u, const LevelWeights& w, double tol);

/// u(x) - u(y) <= S(y,x) + slack for all pairs.
bool satisfies_distance_bounds(const VertexFunction& u, const DistanceTable& table, double slack);

/// g(x) - g(y) <= S(y,x) + tol on all pairs of distinct support points.
AdmissibilityVerdict check_admissible(const Trace& trace, const DistanceTable& table, double tol);

/// Hopf-Lax formula v(x) = min_y g(y) + S_c(y,x) for traces supported in the
/// projected Aubry set; v = g on the support. MisuseError when the support
/// leaves the Aubry set, AdmissibilityError when the trace is inadmissible.
VertexFunction solve_critical(const Trace& trace, const DistanceTable& table, const AubryData& aubry, double tol);

/// Same formula for any support, without pinning v to g: the maximal
/// subsolution below g. Not unique as a solution when the support leaves the
/// Aubry set.
VertexFunction solve_relaxed(const Trace& trace, const DistanceTable& table);

/// Unique solution off the support V' at a supercritical level: v = g on V',
/// min_y g(y) + S_a(y,x) elsewhere. MisuseError when a <= c + tol or V' is empty.
VertexFunction solve_supercritical(const Trace& trace, const DistanceTable& table, double critical, double tol);

struct StrictSubsolution {
  VertexFunction w;
  std::vector<double> slack;  // sigma_c(e) - dw(e), per edge
};

/// Critical subsolution that is strict exactly off the Aubry edges: the
/// equal-weight average of one witness subsolution per non-Aubry edge.
/// ConsistencyError when some non-Aubry edge ends with nonpositive slack.
StrictSubsolution strict_subsolution(const Graph& g, const LevelWeights& w, const DistanceTable& table,
                                     const AubryData& aubry);

/// x -> S(y,x) and x -> -S(x,y).
VertexFunction distance_from(const DistanceTable& table, VertexId y);
VertexFunction negative_distance_to(const DistanceTable& table, VertexId y);

}  // namespace hjnet
