#pragma once

#include <cstddef>
#include <vector>

#include "hjnet/graph.hpp"
#include "hjnet/hamiltonian.hpp"
#include "hjnet/tolerances.hpp"

namespace hjnet {

enum class Branch { plus, minus };

/// sigma^-(s) and sigma^+(s) of one arc at one level, tabulated on a uniform
/// grid together with their running integrals. Each cell [s_i, s_{i+1}] is
/// integrated by Simpson's rule with its own midpoint, so integrals over
/// adjacent ranges add up exactly at grid nodes. The grid doubles until the
/// Richardson estimate meets tol.quadrature or tol.max_cells is reached.
class SigmaProfile {
 public:
  SigmaProfile(ArcHamiltonian h, double level, const Tolerances& tol);

  double level() const noexcept { return level_; }
  const ArcHamiltonian& hamiltonian() const noexcept { return h_; }
  const Tolerances& tolerances() const noexcept { return tol_; }

  std::size_t cells() const noexcept { return cells_; }
  std::size_t node_count() const noexcept { return cells_ + 1; }
  double node(std::size_t i) const noexcept { return static_cast<double>(i) / static_cast<double>(cells_); }
  const SigmaPair& at_node(std::size_t i) const { return nodes_.at(i); }

  /// sigma^+- at an arbitrary s (evaluated afresh, not interpolated).
  SigmaPair at(double s) const;
  double sigma(double s, Branch branch) const;

  /// Oriented integral of the branch from s1 to s2 (negative when s2 < s1).
  double integral(double s1, double s2, Branch branch) const;
  /// Oriented integral of lambda * sigma^- + (1 - lambda) * sigma^+.
  double integral_mix(double s1, double s2, double lambda) const;
  double total(Branch branch) const;

  /// Richardson estimate |I_h - I_2h| / 15, maximised over both branches.
  double error_estimate() const noexcept { return error_estimate_; }
  /// True when sigma^+ and sigma^- coincide everywhere on the grid.
  bool degenerate() const noexcept { return degenerate_; }

 private:
  double partial(double s1, double s2, Branch branch) const;  // s1 <= s2 in one cell
  double cumulative(double s, Branch branch) const;

  ArcHamiltonian h_;
  double level_;
  Tolerances tol_;
  std::size_t cells_ = 0;
  std::vector<SigmaPair> nodes_;
  std::vector<double> cum_plus_;
  std::vector<double> cum_minus_;
  double error_estimate_ = 0.0;
  bool degenerate_ = false;
};

/// Both roots of H(s, .) = a. Thin wrapper over ArcHamiltonian::sigma_pm.
SigmaPair sigma_pm(const ArcHamiltonian& h, double a, double s, const Tolerances& tol);

/// Oriented integral of one branch over [s1, s2] (0 <= s1 <= s2 <= 1).
double integrate_sigma(const ArcHamiltonian& h, double a, double s1, double s2, Branch branch,
                       const Tolerances& tol);

/// Forward: int sigma^+. Backward: -int sigma^-.
double edge_weight(const ArcHamiltonian& h, double a, Orientation orientation, const Tolerances& tol);
double edge_weight(const SigmaProfile& profile, Orientation orientation);

/// Least level admitting periodic subsolutions on a closed arc: the root of
/// a -> min(-int sigma_a^-, int sigma_a^+) above a_gamma. MisuseError for open arcs.
double c_gamma(const ArcHamiltonian& h, const Tolerances& tol);

}  // namespace hjnet
