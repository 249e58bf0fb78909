#pragma once

#include <optional>
#include <vector>

#include "hjnet/graph.hpp"
#include "hjnet/hamiltonian.hpp"
#include "hjnet/tolerances.hpp"

namespace hjnet {

/// Floor levels of one arc: a_gamma always, c_gamma for closed arcs.
struct ArcConstants {
  double a_gamma = 0.0;
  std::optional<double> c_gamma;
};

/// An embedded network reduced to what the solvers need: the abstract graph,
/// one Hamiltonian per arc (in the arc's own parametrisation), tolerances,
/// and the per-arc floor levels computed once at construction.
class Network {
 public:
  /// The closed flag of each Hamiltonian is overwritten from the graph.
  /// Throws ValidationError when the counts disagree.
  Network(Graph graph, std::vector<ArcHamiltonian> hamiltonians, Tolerances tol = {});

  const Graph& graph() const noexcept { return graph_; }
  const Tolerances& tolerances() const noexcept { return tol_; }
  const ArcHamiltonian& hamiltonian(ArcId a) const { return hamiltonians_.at(a.index); }
  const ArcConstants& constants(ArcId a) const { return constants_.at(a.index); }

  /// Hamiltonian seen along a directed edge (reversed view for backward edges).
  ArcHamiltonian edge_hamiltonian(EdgeId e) const;

  /// max of a_gamma over open arcs and c_gamma over closed arcs.
  double a0() const noexcept { return a0_; }

  /// The same network with every arc traversed in the opposite direction:
  /// tail and head swapped and each Hamiltonian replaced by its reversed view.
  Network reversed() const;

 private:
  Graph graph_;
  std::vector<ArcHamiltonian> hamiltonians_;
  Tolerances tol_;
  std::vector<ArcConstants> constants_;
  double a0_ = 0.0;
};

}  // namespace hjnet
