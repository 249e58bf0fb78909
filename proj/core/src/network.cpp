#include "hjnet/network.hpp"

#include <algorithm>
#include <limits>

#include "hjnet/error.hpp"
#include "hjnet/numerics.hpp"

namespace hjnet {

namespace {

ArcHamiltonian with_closed(const ArcHamiltonian& h, bool closed) {
  if (h.closed() == closed) return h;
  ArcHamiltonian out = std::visit([&](const auto& fam) { return ArcHamiltonian(fam, closed); }, h.family());
  return h.is_reversed() ? out.reversed() : out;
}

}  // namespace

Network::Network(Graph graph, std::vector<ArcHamiltonian> hamiltonians, Tolerances tol)
    : graph_(std::move(graph)), tol_(tol) {
  if (hamiltonians.size() != graph_.arc_count()) {
    throw ValidationError("network has " + std::to_string(graph_.arc_count()) + " arcs but " +
                          std::to_string(hamiltonians.size()) + " Hamiltonians");
  }
  hamiltonians_.reserve(hamiltonians.size());
  for (std::size_t k = 0; k < hamiltonians.size(); ++k) {
    hamiltonians_.push_back(with_closed(hamiltonians[k], graph_.is_closed(ArcId{k})));
  }
  constants_.resize(hamiltonians_.size());
  a0_ = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < hamiltonians_.size(); ++k) {
    ArcConstants& c = constants_[k];
    c.a_gamma = hamiltonians_[k].a_gamma(tol_);
    if (hamiltonians_[k].closed()) {
      c.c_gamma = hjnet::c_gamma(hamiltonians_[k], tol_);
      a0_ = std::max(a0_, *c.c_gamma);
    } else {
      a0_ = std::max(a0_, c.a_gamma);
    }
  }
  if (hamiltonians_.empty()) a0_ = 0.0;
}

ArcHamiltonian Network::edge_hamiltonian(EdgeId e) const {
  const DirectedEdge& d = graph_.edge(e);
  const ArcHamiltonian& h = hamiltonians_.at(d.arc.index);
  return d.orientation == Orientation::forward ? h : h.reversed();
}

Network Network::reversed() const {
  std::vector<VertexInfo> vertices;
  for (std::size_t i = 0; i < graph_.vertex_count(); ++i) vertices.push_back(graph_.vertex(VertexId{i}));
  std::vector<ArcInfo> arcs;
  std::vector<ArcHamiltonian> hs;
  for (std::size_t k = 0; k < graph_.arc_count(); ++k) {
    const ArcInfo& a = graph_.arc(ArcId{k});
    arcs.push_back({a.name, a.head, a.tail});
    hs.push_back(hamiltonians_[k].reversed());
  }
  return Network(Graph::build(std::move(vertices), std::move(arcs)), std::move(hs), tol_);
}

}  // namespace hjnet
