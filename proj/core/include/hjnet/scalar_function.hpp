#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace hjnet {

/// Continuous parameter function on [0,1] used by the built-in Hamiltonian
/// family. Four shapes are supported:
///   constant         c
///   polynomial       sum_k c_k s^k
///   fourier          a0 + sum_k a_k cos(2 pi k s) + b_k sin(2 pi k s)
///   piecewise_linear linear interpolation through (s_i, v_i), s_0 = 0, s_n = 1
class ScalarFunction {
 public:
  struct Constant {
    double value = 0.0;
    bool operator==(const Constant&) const = default;
  };
  struct Polynomial {
    std::vector<double> coefficients;  // lowest degree first
    bool operator==(const Polynomial&) const = default;
  };
  struct Fourier {
    double a0 = 0.0;
    std::vector<double> cosines;
    std::vector<double> sines;
    bool operator==(const Fourier&) const = default;
  };
  struct PiecewiseLinear {
    std::vector<std::pair<double, double>> nodes;
    bool operator==(const PiecewiseLinear&) const = default;
  };
  using Shape = std::variant<Constant, Polynomial, Fourier, PiecewiseLinear>;

  ScalarFunction() : shape_(Constant{0.0}) {}

  static ScalarFunction constant(double c);
  static ScalarFunction polynomial(std::vector<double> coefficients);
  static ScalarFunction fourier(double a0, std::vector<double> cosines, std::vector<double> sines);
  /// Throws ValidationError unless nodes are strictly increasing from 0 to 1.
  static ScalarFunction piecewise_linear(std::vector<std::pair<double, double>> nodes);

  double operator()(double s) const;

  /// Reflected function s -> g(1 - s), kept within the same shape.
  ScalarFunction reflected() const;
  /// Pointwise negation, kept within the same shape.
  ScalarFunction negated() const;

  /// Points where the function may fail to be smooth (interior nodes of a
  /// piecewise-linear function). Extremum searches sample these explicitly.
  std::vector<double> breakpoints() const;

  /// Upper bound on |g| over [0,1].
  double abs_bound() const;

  bool is_constant() const;

  const Shape& shape() const noexcept { return shape_; }
  bool operator==(const ScalarFunction&) const = default;

 private:
  explicit ScalarFunction(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

}  // namespace hjnet
