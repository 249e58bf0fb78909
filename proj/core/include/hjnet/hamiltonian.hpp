#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "hjnet/scalar_function.hpp"
#include "hjnet/tolerances.hpp"

namespace hjnet {

/// H(s,p) = |p - b(s)|^q - f(s) with q >= 1. Continuous, coercive and
/// quasiconvex in p by construction, with minimiser p = b(s).
struct TiltedEikonal {
  ScalarFunction b;
  ScalarFunction f;
  double q = 1.0;

  bool operator==(const TiltedEikonal&) const = default;
};

/// Arbitrary Hamiltonian given as an evaluator. `radius(a)` must bound the
/// sublevel set: H(s,p) <= a implies |p| < radius(a), for every s.
struct BlackBox {
  std::function<double(double s, double p)> evaluate;
  std::function<double(double a)> radius;
};

struct MomentumMinimum {
  double argmin = 0.0;
  double value = 0.0;
};

struct SigmaPair {
  double minus = 0.0;
  double plus = 0.0;
};

/// Per-arc Hamiltonian. A reversed view evaluates H(1 - s, -p), which is the
/// Hamiltonian of the arc traversed backwards; reversing twice restores the
/// original evaluator exactly.
class ArcHamiltonian {
 public:
  using Family = std::variant<TiltedEikonal, BlackBox>;

  explicit ArcHamiltonian(TiltedEikonal family, bool closed = false);
  explicit ArcHamiltonian(BlackBox family, bool closed = false);

  bool closed() const noexcept { return closed_; }
  bool is_reversed() const noexcept { return reversed_; }
  const Family& family() const noexcept { return family_; }

  ArcHamiltonian reversed() const;

  /// H(s,p). Throws DomainError for s outside [0,1].
  double operator()(double s, double p) const;

  /// min over p of H(s,p) with its location. Closed form for the tilted
  /// family; golden-section search for black boxes (ValidationError when the
  /// declared bracket does not enclose the minimum).
  MomentumMinimum min_over_p(double s, const Tolerances& tol) const;

  /// Smallest and largest p with H(s,p) = a. Throws LevelError when the level
  /// set is empty at s (a below min_p H(s,p) by more than tol.level).
  SigmaPair sigma_pm(double a, double s, const Tolerances& tol) const;

  /// max over s of min over p of H(s,p).
  double a_gamma(const Tolerances& tol) const;

  /// Range [min_s, max_s] of s -> min_p H(s,p); its width measures how far the
  /// arc is from having a constant bottom level.
  std::pair<double, double> bottom_range(const Tolerances& tol) const;

  /// Grid spot-checks of the black-box assumptions (continuity is trusted,
  /// coercivity via the declared radius, unimodality in p). Empty for the
  /// built-in family. A passing grid check is evidence, not a proof.
  std::vector<std::string> validate(const Tolerances& tol, std::vector<double> levels = {}) const;

 private:
  MomentumMinimum raw_min_over_p(double s, const Tolerances& tol) const;
  SigmaPair raw_sigma_pm(double a, double s, const Tolerances& tol) const;
  double raw_eval(double s, double p) const;
  std::vector<double> breakpoints() const;

  Family family_;
  bool closed_ = false;
  bool reversed_ = false;
};

}  // namespace hjnet
