#include "hjnet/arc_extension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hjnet/error.hpp"

namespace hjnet {

NetworkPoint NetworkPoint::at_vertex(VertexId x) {
  NetworkPoint p;
  p.vertex = x;
  return p;
}

NetworkPoint NetworkPoint::on_arc(const Graph& g, ArcId arc, double s) {
  if (arc.index >= g.arc_count()) throw DomainError("point refers to arc " + std::to_string(arc.index) + " which does not exist");
  if (!(s >= 0.0 && s <= 1.0)) {
    std::ostringstream msg;
    msg << "point parameter s = " << s << " on arc '" << g.arc(arc).name << "' is outside [0,1]";
    throw DomainError(msg.str());
  }
  if (s == 0.0) return at_vertex(g.arc(arc).tail);
  if (s == 1.0) return at_vertex(g.arc(arc).head);
  NetworkPoint p;
  p.arc = arc;
  p.s = s;
  return p;
}

NetworkPoint NetworkPoint::on_reversed(const Graph& g, ArcId arc, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("point parameter on the reversed arc is outside [0,1]");
  return on_arc(g, arc, 1.0 - s);
}

ArcProfile::ArcProfile(ArcId arc, std::shared_ptr<const SigmaProfile> sigma, std::vector<ProfilePiece> pieces)
    : arc_(arc), sigma_(std::move(sigma)), pieces_(std::move(pieces)) {
  if (!sigma_) throw MisuseError("ArcProfile needs a sigma tabulation");
  if (pieces_.empty() || pieces_.front().lo != 0.0 || pieces_.back().hi != 1.0) {
    throw MisuseError("ArcProfile pieces must cover [0,1]");
  }
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].lo != pieces_[i - 1].hi) throw MisuseError("ArcProfile pieces must be contiguous");
  }
}

const ProfilePiece& ArcProfile::piece_at(double s) const {
  for (const ProfilePiece& p : pieces_) {
    if (s <= p.hi) return p;
  }
  return pieces_.back();
}

double ArcProfile::value(double s) const {
  const ProfilePiece& p = piece_at(s);
  return p.anchor_value + sigma_->integral_mix(p.anchor_s, s, p.lambda);
}

double ArcProfile::slope(double s) const {
  const ProfilePiece& p = piece_at(s);
  const SigmaPair sp = sigma_->at(s);
  return p.lambda * sp.minus + (1.0 - p.lambda) * sp.plus;
}

namespace {

const char* piece_tag(const ProfilePiece& p) {
  if (p.lambda == 0.0) return "plus";
  if (p.lambda == 1.0) return "minus";
  return "mix";
}

double mix(const SigmaPair& sp, double lambda) { return lambda * sp.minus + (1.0 - lambda) * sp.plus; }

}  // namespace

std::string ArcProfile::tag(double s) const {
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (s == pieces_[i].hi && pieces_[i].lambda != pieces_[i + 1].lambda) return "kink";
  }
  return piece_tag(piece_at(s));
}

std::vector<double> ArcProfile::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) out.push_back(pieces_[i].hi);
  return out;
}

std::vector<std::shared_ptr<const SigmaProfile>> sigma_profiles(const Network& network, double a) {
  const Graph& g = network.graph();
  const Tolerances& tol = network.tolerances();
  std::vector<std::shared_ptr<const SigmaProfile>> out;
  out.reserve(g.arc_count());
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const ArcId arc{k};
    if (a < network.constants(arc).a_gamma - tol.level) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "level " << a << " is below a_gamma = " << network.constants(arc).a_gamma << " of arc '"
          << g.arc(arc).name << "'";
      throw LevelError(msg.str());
    }
    out.push_back(std::make_shared<const SigmaProfile>(network.hamiltonian(arc), a, tol));
  }
  return out;
}

std::vector<ProfilePiece> solve_on_interval(const SigmaProfile& sigma, double lo, double hi, double vlo, double vhi,
                                            double tol) {
  if (!(0.0 <= lo && lo < hi && hi <= 1.0)) {
    std::ostringstream msg;
    msg << "solve_on_interval: need 0 <= lo < hi <= 1, got [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
  const double up = sigma.integral(lo, hi, Branch::plus);
  const double down = sigma.integral(lo, hi, Branch::minus);
  const double rise = vhi - vlo;
  if (rise > up + tol || rise < down - tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "inadmissible boundary values on [" << lo << ", " << hi << "]: w(hi) - w(lo) = " << rise;
    if (rise > up + tol) {
      msg << " exceeds int sigma^+ = " << up;
    } else {
      msg << " is below int sigma^- = " << down;
    }
    throw AdmissibilityError(msg.str());
  }

  const double branch_tol = sigma.tolerances().branch;
  // D(s) = plus-from-left minus minus-from-right; nondecreasing in s.
  auto gap = [&](double s) {
    return vlo - vhi + sigma.integral(lo, s, Branch::plus) + sigma.integral(s, hi, Branch::minus);
  };
  const double at_hi = vlo - vhi + up;
  const double at_lo = vlo - vhi + down;
  if (at_hi <= branch_tol) return {{lo, hi, lo, vlo, 0.0}};
  if (at_lo >= -branch_tol) return {{lo, hi, hi, vhi, 1.0}};

  double a = lo;
  double b = hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (gap(mid) < 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  const double kink = std::abs(gap(a)) <= std::abs(gap(b)) ? a : b;
  if (kink <= lo) return {{lo, hi, hi, vhi, 1.0}};
  if (kink >= hi) return {{lo, hi, lo, vlo, 0.0}};
  return {{lo, kink, lo, vlo, 0.0}, {kink, hi, hi, vhi, 1.0}};
}

ArcProfile solve_on_arc(ArcId arc, std::shared_ptr<const SigmaProfile> sigma, double alpha, double beta, double tol) {
  auto pieces = solve_on_interval(*sigma, 0.0, 1.0, alpha, beta, tol);
  return ArcProfile(arc, std::move(sigma), std::move(pieces));
}

NetworkFunction extend_vertex_solution(const Network& network, const VertexFunction& u) {
  const Graph& g = network.graph();
  if (u.values.size() != g.vertex_count()) throw MisuseError("vertex function size does not match the graph");
  const auto sigmas = sigma_profiles(network, u.level);
  NetworkFunction nf;
  nf.vertices = u;
  nf.profiles.reserve(g.arc_count());
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const ArcInfo& info = g.arc(ArcId{k});
    nf.profiles.push_back(
        solve_on_arc(ArcId{k}, sigmas[k], u(info.tail), u(info.head), network.tolerances().zero));
  }
  return nf;
}

ArcProfile interior_max_subsolution(ArcId arc, std::shared_ptr<const SigmaProfile> sigma, double s0, double alpha) {
  if (!(s0 > 0.0 && s0 < 1.0)) {
    std::ostringstream msg;
    msg << "interior_max_subsolution: s0 = " << s0 << " is not in (0,1)";
    throw DomainError(msg.str());
  }
  std::vector<ProfilePiece> pieces{{0.0, s0, s0, alpha, 1.0}, {s0, 1.0, s0, alpha, 0.0}};
  return ArcProfile(arc, std::move(sigma), std::move(pieces));
}

ArcProfile periodic_max_subsolution(const Network& network, ArcId arc, std::shared_ptr<const SigmaProfile> sigma,
                                    double s0, double alpha) {
  const Graph& g = network.graph();
  if (!g.is_closed(arc)) throw MisuseError("periodic_max_subsolution needs a closed arc");
  if (!(s0 > 0.0 && s0 < 1.0)) {
    std::ostringstream msg;
    msg << "periodic_max_subsolution: s0 = " << s0 << " is not in (0,1)";
    throw DomainError(msg.str());
  }
  const Tolerances& tol = network.tolerances();
  const double cg = *network.constants(arc).c_gamma;
  if (sigma->level() < cg - tol.level) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "level " << sigma->level() << " is below c_gamma = " << cg << " of closed arc '" << g.arc(arc).name
        << "'; no periodic subsolution exists";
    throw LevelError(msg.str());
  }
  const double beta =
      std::min(-sigma->integral(0.0, s0, Branch::minus), sigma->integral(s0, 1.0, Branch::plus));
  auto pieces = solve_on_interval(*sigma, 0.0, s0, alpha + beta, alpha, tol.zero);
  auto right = solve_on_interval(*sigma, s0, 1.0, alpha, alpha + beta, tol.zero);
  pieces.insert(pieces.end(), right.begin(), right.end());
  return ArcProfile(arc, std::move(sigma), std::move(pieces));
}

SplitNetwork::SplitNetwork(const Network& network, double a, std::span<const NetworkPoint> points)
    : level_(a), vertex_count_(network.graph().vertex_count()) {
  const Graph& g = network.graph();
  sigma_ = sigma_profiles(network, a);
  splits_.resize(g.arc_count());
  for (const NetworkPoint& p : points) {
    if (p.is_vertex()) {
      if (p.vertex->index >= vertex_count_) throw MisuseError("point refers to a vertex outside the graph");
      continue;
    }
    if (p.arc.index >= g.arc_count()) throw MisuseError("point refers to an arc outside the graph");
    if (!(p.s > 0.0 && p.s < 1.0)) throw MisuseError("interior point must have 0 < s < 1");
    splits_[p.arc.index].emplace_back(p.s, 0);
  }
  std::size_t next = vertex_count_;
  for (auto& list : splits_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end(),
                           [](const auto& x, const auto& y) { return x.first == y.first; }),
               list.end());
    for (auto& entry : list) entry.second = next++;
  }

  std::vector<WeightedEdge> edges;
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const ArcInfo& info = g.arc(ArcId{k});
    const SigmaProfile& sp = *sigma_[k];
    const auto& list = splits_[k];
    if (list.empty()) {
      edges.push_back({info.tail.index, info.head.index, sp.total(Branch::plus)});
      edges.push_back({info.head.index, info.tail.index, -sp.total(Branch::minus)});
      continue;
    }
    double s_prev = 0.0;
    std::size_t n_prev = info.tail.index;
    for (std::size_t i = 0; i <= list.size(); ++i) {
      const double s_next = i < list.size() ? list[i].first : 1.0;
      const std::size_t n_next = i < list.size() ? list[i].second : info.head.index;
      edges.push_back({n_prev, n_next, sp.integral(s_prev, s_next, Branch::plus)});
      edges.push_back({n_next, n_prev, -sp.integral(s_prev, s_next, Branch::minus)});
      s_prev = s_next;
      n_prev = n_next;
    }
  }
  table_ = DistanceTable::floyd_warshall(next, edges, a, network.tolerances().zero);
}

std::size_t SplitNetwork::node(const NetworkPoint& p) const {
  if (p.is_vertex()) return p.vertex->index;
  const auto& list = splits_.at(p.arc.index);
  for (const auto& [s, id] : list) {
    if (s == p.s) return id;
  }
  throw MisuseError("point was not part of this split network");
}

double intrinsic_distance(const Network& network, double a, const NetworkPoint& x, const NetworkPoint& y) {
  if (x.is_vertex() && y.is_vertex()) return distance_table(network, a)(*x.vertex, *y.vertex);
  const NetworkPoint pts[] = {x, y};
  return SplitNetwork(network, a, pts).distance(x, y);
}

NetworkFunction solve_from_points(const Network& network, const PointTrace& trace) {
  const Graph& g = network.graph();
  const Tolerances& tol = network.tolerances();
  if (trace.entries.empty()) throw MisuseError("solve_from_points: the trace support is empty");
  std::vector<NetworkPoint> points;
  for (const auto& [p, value] : trace.entries) {
    if (std::find(points.begin(), points.end(), p) != points.end()) {
      throw MisuseError("trace lists the same point twice");
    }
    if (!std::isfinite(value)) throw MisuseError("trace value is not finite");
    points.push_back(p);
  }
  const SplitNetwork split(network, trace.level, points);
  const DistanceTable& d = split.table();

  std::vector<std::size_t> support;
  for (const NetworkPoint& p : points) support.push_back(split.node(p));
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (i == j) continue;
      const double excess = trace.entries[i].second - trace.entries[j].second - d.at(support[j], support[i]);
      if (excess > tol.zero) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "inadmissible trace: support points " << j << " -> " << i << " violate g(x) - g(y) <= S(y,x) by "
            << excess;
        throw AdmissibilityError(msg.str());
      }
    }
  }

  std::vector<double> v(d.size(), std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < d.size(); ++k) {
    for (std::size_t i = 0; i < support.size(); ++i) {
      v[k] = std::min(v[k], trace.entries[i].second + d.at(support[i], k));
    }
  }
  for (std::size_t i = 0; i < support.size(); ++i) v[support[i]] = trace.entries[i].second;

  VertexFunction u;
  u.level = trace.level;
  u.values.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(g.vertex_count()));
  std::vector<std::pair<NetworkPoint, double>> interior;
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    for (const auto& [s, id] : split.splits(ArcId{k})) interior.emplace_back(NetworkPoint::on_arc(g, ArcId{k}, s), v[id]);
  }
  return extend_with_points(network, u, interior);
}

NetworkFunction extend_with_points(const Network& network, const VertexFunction& u,
                                   std::span<const std::pair<NetworkPoint, double>> points) {
  const Graph& g = network.graph();
  if (u.values.size() != g.vertex_count()) throw MisuseError("vertex function size does not match the graph");
  const auto sigmas = sigma_profiles(network, u.level);
  std::vector<std::vector<std::pair<double, double>>> cuts(g.arc_count());
  for (const auto& [p, value] : points) {
    if (p.is_vertex()) {
      if (std::abs(value - u(*p.vertex)) > network.tolerances().zero) {
        throw MisuseError("point value at a vertex disagrees with the vertex value");
      }
      continue;
    }
    if (p.arc.index >= g.arc_count()) throw MisuseError("point refers to an arc outside the graph");
    cuts[p.arc.index].emplace_back(p.s, value);
  }
  NetworkFunction nf;
  nf.vertices = u;
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const ArcId arc{k};
    const ArcInfo& info = g.arc(arc);
    auto& list = cuts[k];
    std::sort(list.begin(), list.end());
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i].first == list[i - 1].first) throw MisuseError("two values given at the same point");
    }
    std::vector<ProfilePiece> pieces;
    double s_prev = 0.0;
    double v_prev = u(info.tail);
    for (std::size_t i = 0; i <= list.size(); ++i) {
      const double s_next = i < list.size() ? list[i].first : 1.0;
      const double v_next = i < list.size() ? list[i].second : u(info.head);
      auto part = solve_on_interval(*sigmas[k], s_prev, s_next, v_prev, v_next, network.tolerances().zero);
      pieces.insert(pieces.end(), part.begin(), part.end());
      s_prev = s_next;
      v_prev = v_next;
    }
    nf.profiles.emplace_back(arc, sigmas[k], std::move(pieces));
    for (const auto& [s, value] : list) nf.points.emplace_back(NetworkPoint::on_arc(g, arc, s), value);
  }
  return nf;
}

NetworkFunction maximal_subsolution_from_point(const Network& network, const NetworkPoint& y, double value,
                                               double a) {
  PointTrace trace;
  trace.level = a;
  trace.entries.emplace_back(y, value);
  return solve_from_points(network, trace);
}

C1Subsolution c1_subsolution(const Network& network, const VertexFunction& w) {
  const Graph& g = network.graph();
  const double tol = network.tolerances().zero;
  if (w.values.size() != g.vertex_count()) throw MisuseError("vertex function size does not match the graph");
  const auto sigmas = sigma_profiles(network, w.level);
  C1Subsolution out;
  out.function.vertices = w;
  out.lambda.resize(g.arc_count());
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const ArcId arc{k};
    const ArcInfo& info = g.arc(arc);
    const SigmaProfile& sp = *sigmas[k];
    const double up = sp.total(Branch::plus);
    const double down = sp.total(Branch::minus);
    const double dw = w(info.head) - w(info.tail);
    if (dw > up + tol || dw < down - tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "arc '" << info.name << "': dw = " << dw << " lies outside [" << down << ", " << up
          << "]; the vertex function is not a subsolution";
      throw AdmissibilityError(msg.str());
    }
    double lambda = 0.0;
    if (!sp.degenerate() && up > down) lambda = std::clamp((up - dw) / (up - down), 0.0, 1.0);
    out.lambda[k] = lambda;
    out.function.profiles.emplace_back(arc, sigmas[k],
                                       std::vector<ProfilePiece>{{0.0, 1.0, 0.0, w(info.tail), lambda}});
  }
  return out;
}

std::vector<ArcResidual> residual_check(const NetworkFunction& nf) {
  std::vector<ArcResidual> out;
  for (const ArcProfile& profile : nf.profiles) {
    const SigmaProfile& sp = profile.sigma();
    const ArcHamiltonian& h = sp.hamiltonian();
    const auto breaks = profile.breakpoints();
    const auto pieces = profile.pieces();
    ArcResidual r;
    r.arc = profile.arc();
    std::size_t piece = 0;
    for (std::size_t i = 1; i < sp.cells(); ++i) {
      const double s = sp.node(i);
      if (std::find(breaks.begin(), breaks.end(), s) != breaks.end()) continue;
      while (s > pieces[piece].hi) ++piece;
      const double p = mix(sp.at_node(i), pieces[piece].lambda);
      const double res = h(s, p) - sp.level();
      ++r.samples;
      r.max_signed = std::max(r.max_signed, res);
      if (std::abs(res) > r.max_abs) {
        r.max_abs = std::abs(res);
        r.worst_s = s;
      }
    }
    out.push_back(r);
  }
  return out;
}

NetworkSolutionVerdict check_network_solution(const Network& network, const NetworkFunction& nf, double tol) {
  const Graph& g = network.graph();
  if (nf.profiles.size() != g.arc_count() || nf.vertices.values.size() != g.vertex_count()) {
    throw MisuseError("network function does not match the network");
  }
  NetworkSolutionVerdict out;
  auto fail = [&](SolutionFailure f) { out.failures.push_back(std::move(f)); };

  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const ArcId arc{k};
    const ArcInfo& info = g.arc(arc);
    const ArcProfile& profile = nf.profiles[k];
    const double d0 = profile.value(0.0) - nf.vertices(info.tail);
    const double d1 = profile.value(1.0) - nf.vertices(info.head);
    if (std::abs(d0) > tol) fail({"continuity", info.tail, arc, 0.0, d0});
    if (std::abs(d1) > tol) fail({"continuity", info.head, arc, 1.0, d1});

    const auto pieces = profile.pieces();
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      const ProfilePiece& left = pieces[i];
      const ProfilePiece& right = pieces[i + 1];
      const double s = left.hi;
      const double vl = left.anchor_value + profile.sigma().integral_mix(left.anchor_s, s, left.lambda);
      const double vr = right.anchor_value + profile.sigma().integral_mix(right.anchor_s, s, right.lambda);
      if (std::abs(vl - vr) > tol) fail({"continuity", std::nullopt, arc, s, vl - vr});
      const SigmaPair sp = profile.sigma().at(s);
      const double jump = mix(sp, right.lambda) - mix(sp, left.lambda);
      if (jump > tol) fail({"convex_kink", std::nullopt, arc, s, jump});
    }
  }

  for (const ArcResidual& r : residual_check(nf)) {
    if (r.max_abs > tol) fail({"residual", std::nullopt, r.arc, r.worst_s, r.max_abs});
  }

  for (std::size_t x = 0; x < g.vertex_count(); ++x) {
    const VertexId vx{x};
    bool ok = false;
    double best = std::numeric_limits<double>::infinity();
    for (EdgeId e : g.star(vx)) {
      const DirectedEdge& in = g.edge(g.reverse(e));
      const ArcProfile& profile = nf.profiles[in.arc.index];
      const SigmaProfile& sp = profile.sigma();
      double shortfall = 0.0;
      if (in.orientation == Orientation::forward) {
        // Arriving at s = 1: the last piece should be the plus branch.
        const ProfilePiece& last = profile.pieces().back();
        const SigmaPair end = sp.at(1.0);
        shortfall = last.lambda * (sp.integral(last.lo, 1.0, Branch::plus) - sp.integral(last.lo, 1.0, Branch::minus));
        if (end.plus - end.minus <= tol) shortfall = 0.0;
      } else {
        // Arriving at s = 0 backwards: the first piece should be the minus branch.
        const ProfilePiece& first = profile.pieces().front();
        const SigmaPair start = sp.at(0.0);
        shortfall = (1.0 - first.lambda) *
                    (sp.integral(0.0, first.hi, Branch::plus) - sp.integral(0.0, first.hi, Branch::minus));
        if (start.plus - start.minus <= tol) shortfall = 0.0;
      }
      best = std::min(best, shortfall);
      if (shortfall <= tol) {
        ok = true;
        break;
      }
    }
    if (!ok) fail({"vertex", vx, std::nullopt, 0.0, best});
  }

  out.ok = out.failures.empty();
  return out;
}

std::vector<ProfileSample> sample(const NetworkFunction& nf, std::size_t resolution) {
  if (resolution < 2) throw MisuseError("sample resolution must be at least 2");
  std::vector<ProfileSample> out;
  out.reserve(nf.profiles.size() * resolution);
  for (const ArcProfile& profile : nf.profiles) {
    for (std::size_t i = 0; i < resolution; ++i) {
      const double s = static_cast<double>(i) / static_cast<double>(resolution - 1);
      out.push_back({profile.arc(), s, profile.value(s), profile.tag(s)});
    }
  }
  return out;
}

}  // namespace hjnet
