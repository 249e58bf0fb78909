#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace hjnet {

/// Numerical tolerances shared by every module. All are configurable; the
/// defaults are what every report echoes unless overridden.
struct Tolerances {
  double level = 1e-9;       ///< bisection tolerance on levels a (c_gamma, critical value)
  double momentum = 1e-12;   ///< golden-section tolerance on p for black-box minimisation
  double hamiltonian = 1e-10;///< |H(s, sigma) - a| residual allowed for level-set roots
  double quadrature = 1e-8;  ///< Richardson estimate target for arc integrals
  double zero = 1e-6;        ///< zero-cycle / Aubry membership / solution-check threshold
  double branch = 1e-9;      ///< gap below which a boundary value is snapped onto a pure branch
  std::size_t grid = 257;    ///< initial number of s-nodes per arc (odd)
  std::size_t max_cells = 8192;  ///< cap on adaptive grid refinement
  std::size_t enumeration_cap = 24;  ///< max directed edges for brute-force enumeration

  /// Named view used for reporting and for the HJNET_TOL_* overrides.
  std::vector<std::pair<std::string, double>> entries() const;

  /// Sets a tolerance by its report name ("tol_a", "tol_p", ...). Throws
  /// ValidationError for unknown names or non-positive values.
  void set(const std::string& name, double value);

  /// Applies HJNET_TOL_A, HJNET_TOL_P, HJNET_TOL_H, HJNET_TOL_Q,
  /// HJNET_TOL_ZERO, HJNET_TOL_BRANCH, HJNET_TOL_GRID from the environment.
  Tolerances with_environment() const;
};

}  // namespace hjnet
