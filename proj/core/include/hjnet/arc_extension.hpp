#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hjnet/dfe.hpp"
#include "hjnet/numerics.hpp"

namespace hjnet {

/// A point of the network: a vertex, or an interior point (arc, s) with
/// 0 < s < 1 in the arc's own parametrisation.
struct NetworkPoint {
  std::optional<VertexId> vertex;
  ArcId arc;
  double s = 0.0;

  static NetworkPoint at_vertex(VertexId x);
  /// Canonical form: s = 0 and s = 1 become the tail and head vertices.
  /// DomainError for s outside [0,1].
  static NetworkPoint on_arc(const Graph& g, ArcId arc, double s);
  /// A point given at parameter s of the reversed arc, stored at 1 - s.
  static NetworkPoint on_reversed(const Graph& g, ArcId arc, double s);

  bool is_vertex() const noexcept { return vertex.has_value(); }
  bool operator==(const NetworkPoint&) const = default;
};

/// One smooth piece of an arc profile on [lo, hi]:
///   w(s) = anchor_value + int_{anchor_s}^{s} (lambda sigma^- + (1 - lambda) sigma^+).
/// lambda = 0 is the plus branch, lambda = 1 the minus branch.
struct ProfilePiece {
  double lo = 0.0;
  double hi = 1.0;
  double anchor_s = 0.0;
  double anchor_value = 0.0;
  double lambda = 0.0;
};

/// A continuous function on one arc, stored as branch-tagged pieces over a
/// shared sigma tabulation, so derivatives are exact branch values.
class ArcProfile {
 public:
  ArcProfile(ArcId arc, std::shared_ptr<const SigmaProfile> sigma, std::vector<ProfilePiece> pieces);

  ArcId arc() const noexcept { return arc_; }
  double level() const noexcept { return sigma_->level(); }
  const SigmaProfile& sigma() const noexcept { return *sigma_; }
  std::span<const ProfilePiece> pieces() const noexcept { return pieces_; }

  double value(double s) const;
  /// Slope of the piece containing s (the leftmost one at a breakpoint).
  double slope(double s) const;
  /// "plus", "minus", "mix", or "kink" at a breakpoint between unlike pieces.
  std::string tag(double s) const;

  /// Interior breakpoints between consecutive pieces.
  std::vector<double> breakpoints() const;

 private:
  const ProfilePiece& piece_at(double s) const;

  ArcId arc_;
  std::shared_ptr<const SigmaProfile> sigma_;
  std::vector<ProfilePiece> pieces_;
};

/// Vertex values together with one profile per arc.
struct NetworkFunction {
  VertexFunction vertices;
  std::vector<ArcProfile> profiles;  // indexed by ArcId
  /// Interior points where arcs were split, with their values.
  std::vector<std::pair<NetworkPoint, double>> points;
};

/// Sigma tabulations of every arc at level a.
std::vector<std::shared_ptr<const SigmaProfile>> sigma_profiles(const Network& network, double a);

/// Maximal solution on [lo, hi] with w(lo) = vlo, w(hi) = vhi:
///   min(vlo + int_lo^s sigma^+, vhi - int_s^hi sigma^-),
/// as a plus piece followed by a minus piece meeting at a bisected kink.
/// Boundary gaps below tol.branch snap onto a single branch. AdmissibilityError
/// when int sigma^- <= vhi - vlo <= int sigma^+ fails by more than tol.
std::vector<ProfilePiece> solve_on_interval(const SigmaProfile& sigma, double lo, double hi, double vlo, double vhi,
                                            double tol);

ArcProfile solve_on_arc(ArcId arc, std::shared_ptr<const SigmaProfile> sigma, double alpha, double beta, double tol);

/// Extends vertex values along every arc with solve_on_arc.
NetworkFunction extend_vertex_solution(const Network& network, const VertexFunction& u);

/// Maximal subsolution with w(s0) = alpha: minus branch left of s0, plus
/// branch right of it. DomainError unless 0 < s0 < 1.
ArcProfile interior_max_subsolution(ArcId arc, std::shared_ptr<const SigmaProfile> sigma, double s0, double alpha);

/// Maximal periodic subsolution of a closed arc with w(s0) = alpha. Its value
/// at the vertex is alpha + min(-int_0^{s0} sigma^-, int_{s0}^1 sigma^+).
/// LevelError when the level is below c_gamma - tol.level.
ArcProfile periodic_max_subsolution(const Network& network, ArcId arc, std::shared_ptr<const SigmaProfile> sigma,
                                    double s0, double alpha);

/// The network with the arcs containing the given points split there. Each
/// piece contributes int sigma^+ forward and -int sigma^- backward; distances
/// are all-pairs over the augmented graph. Original vertices keep their ids.
class SplitNetwork {
 public:
  SplitNetwork(const Network& network, double a, std::span<const NetworkPoint> points);

  double level() const noexcept { return level_; }
  std::size_t node(const NetworkPoint& p) const;
  const DistanceTable& table() const noexcept { return table_; }
  const std::shared_ptr<const SigmaProfile>& sigma(ArcId arc) const { return sigma_.at(arc.index); }

  /// Sorted interior split parameters of an arc and their node ids.
  const std::vector<std::pair<double, std::size_t>>& splits(ArcId arc) const { return splits_.at(arc.index); }

  /// Least weight over nonempty augmented paths; for p = q the cheapest cycle.
  double distance(const NetworkPoint& p, const NetworkPoint& q) const { return table_.at(node(p), node(q)); }

 private:
  double level_ = 0.0;
  std::size_t vertex_count_ = 0;
  std::vector<std::shared_ptr<const SigmaProfile>> sigma_;
  std::vector<std::vector<std::pair<double, std::size_t>>> splits_;
  DistanceTable table_;
};

/// S^Gamma_a(x, y). Between two vertices this is the DistanceTable entry.
/// LevelError when the level admits negative cycles.
double intrinsic_distance(const Network& network, double a, const NetworkPoint& x, const NetworkPoint& y);

/// Boundary data on arbitrary network points.
struct PointTrace {
  double level = 0.0;
  std::vector<std::pair<NetworkPoint, double>> entries;
};

/// Extends vertex values plus values at interior points: every arc is split
/// at its points and each sub-interval solved with solve_on_interval.
NetworkFunction extend_with_points(const Network& network, const VertexFunction& u,
                                   std::span<const std::pair<NetworkPoint, double>> points);

/// v(x) = min over the support of g(y) + S^Gamma_a(y, x), with v = g on the
/// support, extended along every split sub-interval. AdmissibilityError for
/// support pairs violating g(x) - g(y) <= S^Gamma_a(y, x) + tol.zero.
NetworkFunction solve_from_points(const Network& network, const PointTrace& trace);

/// value + S^Gamma_a(y, .): a solution on the network minus y.
NetworkFunction maximal_subsolution_from_point(const Network& network, const NetworkPoint& y, double value,
                                               double a);

struct C1Subsolution {
  NetworkFunction function;
  std::vector<double> lambda;  // per arc
};

/// One mixed piece per arc, w(tail) + int_0^s (lambda sigma^- + (1 - lambda)
/// sigma^+), with lambda chosen so the head value is met. Degenerate arcs take
/// lambda = 0. AdmissibilityError when dw leaves [int sigma^-, int sigma^+]
/// by more than tol.zero.
C1Subsolution c1_subsolution(const Network& network, const VertexFunction& w);

struct ArcResidual {
  ArcId arc;
  double max_abs = 0.0;
  double max_signed = -std::numeric_limits<double>::infinity();
  double worst_s = 0.0;
  std::size_t samples = 0;
};

/// H(s, w'(s)) - a at every interior grid node of each profile, skipping
/// breakpoints, with w' the piece's exact branch mix.
std::vector<ArcResidual> residual_check(const NetworkFunction& nf);

struct SolutionFailure {
  std::string kind;  // "continuity", "residual", "convex_kink", "vertex"
  std::optional<VertexId> vertex;
  std::optional<ArcId> arc;
  double s = 0.0;
  double amount = 0.0;
};

struct NetworkSolutionVerdict {
  bool ok = true;
  std::vector<SolutionFailure> failures;
};

/// Viscosity solution test on the whole network: profiles continuous and
/// matching the vertex values, residual within tol, no convex kink on any arc,
/// and at every vertex some arc arriving on its incoming plus branch (or with
/// sigma^+ = sigma^- there).
NetworkSolutionVerdict check_network_solution(const Network& network, const NetworkFunction& nf, double tol);

struct ProfileSample {
  ArcId arc;
  double s = 0.0;
  double value = 0.0;
  std::string tag;
};

/// `resolution` equally spaced samples per arc, endpoints included.
std::vector<ProfileSample> sample(const NetworkFunction& nf, std::size_t resolution);

}  // namespace hjnet
