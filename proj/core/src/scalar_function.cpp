#include "hjnet/scalar_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hjnet/error.hpp"

namespace hjnet {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

ScalarFunction ScalarFunction::constant(double c) { return ScalarFunction(Constant{c}); }

ScalarFunction ScalarFunction::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  return ScalarFunction(Polynomial{std::move(coefficients)});
}

ScalarFunction ScalarFunction::fourier(double a0, std::vector<double> cosines,
                                       std::vector<double> sines) {
  return ScalarFunction(Fourier{a0, std::move(cosines), std::move(sines)});
}

ScalarFunction ScalarFunction::piecewise_linear(std::vector<std::pair<double, double>> nodes) {
  if (nodes.size() < 2) throw ValidationError("piecewise_linear needs at least two nodes");
  if (nodes.front().first != 0.0 || nodes.back().first != 1.0) {
    throw ValidationError("piecewise_linear nodes must start at s=0 and end at s=1");
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i].first > nodes[i - 1].first)) {
      throw ValidationError("piecewise_linear nodes must be strictly increasing in s");
    }
  }
  return ScalarFunction(PiecewiseLinear{std::move(nodes)});
}

double ScalarFunction::operator()(double s) const {
  return std::visit(
      overloaded{
          [](const Constant& c) { return c.value; },
          [s](const Polynomial& p) {
            double acc = 0.0;
            for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
              acc = acc * s + *it;
            }
            return acc;
          },
          [s](const Fourier& f) {
            double acc = f.a0;
            const double w = 2.0 * std::numbers::pi * s;
            for (std::size_t k = 0; k < f.cosines.size(); ++k) {
              acc += f.cosines[k] * std::cos(static_cast<double>(k + 1) * w);
            }
            for (std::size_t k = 0; k < f.sines.size(); ++k) {
              acc += f.sines[k] * std::sin(static_cast<double>(k + 1) * w);
            }
            return acc;
          },
          [s](const PiecewiseLinear& pl) {
            const auto& n = pl.nodes;
            if (s <= n.front().first) return n.front().second;
            if (s >= n.back().first) return n.back().second;
            auto it = std::upper_bound(n.begin(), n.end(), s,
                                       [](double v, const auto& node) { return v < node.first; });
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double t = (s - lo.first) / (hi.first - lo.first);
            return lo.second + t * (hi.second - lo.second);
          },
      },
      shape_);
}

ScalarFunction ScalarFunction::reflected() const {
  return std::visit(
      overloaded{
          [](const Constant& c) { return ScalarFunction(c); },
          [](const Polynomial& p) {
            // g(1 - s) expanded with binomial coefficients.
            const std::size_t n = p.coefficients.size();
            std::vector<double> out(n, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
              double binom = 1.0;  // C(k, j)
              for (std::size_t j = 0; j <= k; ++j) {
                const double sign = (j % 2 == 0) ? 1.0 : -1.0;
                out[j] += p.coefficients[k] * binom * sign;
                binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
              }
            }
            return ScalarFunction(Polynomial{std::move(out)});
          },
          [](const Fourier& f) {
            // cos(2 pi k (1-s)) = cos(2 pi k s); sin(2 pi k (1-s)) = -sin(2 pi k s)
            Fourier r = f;
            for (double& b : r.sines) b = -b;
            return ScalarFunction(std::move(r));
          },
          [](const PiecewiseLinear& pl) {
            PiecewiseLinear r;
            r.nodes.reserve(pl.nodes.size());
            for (auto it = pl.nodes.rbegin(); it != pl.nodes.rend(); ++it) {
              r.nodes.emplace_back(1.0 - it->first, it->second);
            }
            r.nodes.front().first = 0.0;
            r.nodes.back().first = 1.0;
            return ScalarFunction(std::move(r));
          },
      },
      shape_);
}

ScalarFunction ScalarFunction::negated() const {
  return std::visit(
      overloaded{
          [](const Constant& c) { return ScalarFunction(Constant{-c.value}); },
          [](Polynomial p) {
            for (double& c : p.coefficients) c = -c;
            return ScalarFunction(std::move(p));
          },
          [](Fourier f) {
            f.a0 = -f.a0;
            for (double& c : f.cosines) c = -c;
            for (double& c : f.sines) c = -c;
            return ScalarFunction(std::move(f));
          },
          [](PiecewiseLinear pl) {
            for (auto& node : pl.nodes) node.second = -node.second;
            return ScalarFunction(std::move(pl));
          },
      },
      shape_);
}

std::vector<double> ScalarFunction::breakpoints() const {
  std::vector<double> out;
  if (const auto* pl = std::get_if<PiecewiseLinear>(&shape_)) {
    for (std::size_t i = 1; i + 1 < pl->nodes.size(); ++i) out.push_back(pl->nodes[i].first);
  }
  return out;
}

double ScalarFunction::abs_bound() const {
  return std::visit(
      overloaded{
          [](const Constant& c) { return std::abs(c.value); },
          [](const Polynomial& p) {
            double acc = 0.0;
            for (double c : p.coefficients) acc += std::abs(c);
            return acc;
          },
          [](const Fourier& f) {
            double acc = std::abs(f.a0);
            for (double c : f.cosines) acc += std::abs(c);
            for (double c : f.sines) acc += std::abs(c);
            return acc;
          },
          [](const PiecewiseLinear& pl) {
            double acc = 0.0;
            for (const auto& node : pl.nodes) acc = std::max(acc, std::abs(node.second));
            return acc;
          },
      },
      shape_);
}

bool ScalarFunction::is_constant() const {
  return std::visit(
      overloaded{
          [](const Constant&) { return true; },
          [](const Polynomial& p) {
            return std::all_of(p.coefficients.begin() + 1, p.coefficients.end(),
                               [](double c) { return c == 0.0; });
          },
          [](const Fourier& f) {
            auto zero = [](double c) { return c == 0.0; };
            return std::all_of(f.cosines.begin(), f.cosines.end(), zero) &&
                   std::all_of(f.sines.begin(), f.sines.end(), zero);
          },
          [](const PiecewiseLinear& pl) {
            return std::all_of(pl.nodes.begin(), pl.nodes.end(),
                               [&](const auto& n) { return n.second == pl.nodes.front().second; });
          },
      },
      shape_);
}

}  // namespace hjnet
