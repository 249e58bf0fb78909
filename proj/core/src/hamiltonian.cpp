#include "hjnet/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hjnet/error.hpp"

namespace hjnet {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

void require_unit(double s, const char* what) {
  if (!(s >= 0.0 && s <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": s = " << s << " is outside [0,1]";
    throw DomainError(msg.str());
  }
}

/// Golden-section search for the minimiser of a unimodal function on [lo, hi].
template <class F>
MomentumMinimum golden_minimum(F&& fn, double lo, double hi, double tol) {
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = fn(x1);
  double f2 = fn(x2);
  for (int it = 0; it < 400 && hi - lo > tol * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = fn(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = fn(x2);
    }
  }
  return f1 <= f2 ? MomentumMinimum{x1, f1} : MomentumMinimum{x2, f2};
}

/// Boundary of {p : fn(p) <= level} between `inside` (satisfies) and
/// `outside` (violates), bisected to adjacent doubles.
template <class F>
double bisect_boundary(F&& fn, double level, double inside, double outside) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    if (fn(mid) <= level) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

}  // namespace

ArcHamiltonian::ArcHamiltonian(TiltedEikonal family, bool closed)
    : family_(std::move(family)), closed_(closed) {
  const auto& te = std::get<TiltedEikonal>(family_);
  if (!(te.q >= 1.0) || !std::isfinite(te.q)) {
    throw ValidationError("tilted_eikonal exponent q must be a finite number >= 1");
  }
}

ArcHamiltonian::ArcHamiltonian(BlackBox family, bool closed)
    : family_(std::move(family)), closed_(closed) {
  const auto& bb = std::get<BlackBox>(family_);
  if (!bb.evaluate || !bb.radius) {
    throw ValidationError("black-box Hamiltonian needs both an evaluator and a radius");
  }
}

ArcHamiltonian ArcHamiltonian::reversed() const {
  ArcHamiltonian out = *this;
  out.reversed_ = !reversed_;
  return out;
}

double ArcHamiltonian::raw_eval(double s, double p) const {
  if (const auto* te = std::get_if<TiltedEikonal>(&family_)) {
    const double d = std::abs(p - te->b(s));
    return (te->q == 1.0 ? d : std::pow(d, te->q)) - te->f(s);
  }
  return std::get<BlackBox>(family_).evaluate(s, p);
}

double ArcHamiltonian::operator()(double s, double p) const {
  require_unit(s, "eval_H");
  return reversed_ ? raw_eval(1.0 - s, -p) : raw_eval(s, p);
}

MomentumMinimum ArcHamiltonian::raw_min_over_p(double s, const Tolerances& tol) const {
  if (const auto* te = std::get_if<TiltedEikonal>(&family_)) {
    return {te->b(s), -te->f(s)};
  }
  const auto& bb = std::get<BlackBox>(family_);
  auto h = [&](double p) { return bb.evaluate(s, p); };
  const double h0 = h(0.0);
  const double r = bb.radius(h0);
  if (!(r > 0.0) || !(h(r) > h0) || !(h(-r) > h0)) {
    std::ostringstream msg;
    msg << "black-box bracket invalid at s = " << s << ": H(s, +-R) must exceed H(s, 0) = " << h0
        << " for R = " << r;
    throw ValidationError(msg.str());
  }
  MomentumMinimum best = golden_minimum(h, -r, r, tol.momentum);
  if (h0 < best.value) best = {0.0, h0};
  return best;
}

MomentumMinimum ArcHamiltonian::min_over_p(double s, const Tolerances& tol) const {
  require_unit(s, "min_over_p");
  if (!reversed_) return raw_min_over_p(s, tol);
  MomentumMinimum m = raw_min_over_p(1.0 - s, tol);
  return {-m.argmin, m.value};
}

SigmaPair ArcHamiltonian::raw_sigma_pm(double a, double s, const Tolerances& tol) const {
  auto empty_level = [&](double bottom) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "level " << a << " is below min_p H(s,p) = " << bottom << " at s = " << s
        << " (empty level set)";
    return LevelError(msg.str());
  };
  if (const auto* te = std::get_if<TiltedEikonal>(&family_)) {
    const double b = te->b(s);
    double r = a + te->f(s);
    if (r < 0.0) {
      if (r < -tol.level) throw empty_level(-te->f(s));
      r = 0.0;
    }
    const double root = te->q == 1.0 ? r : (te->q == 2.0 ? std::sqrt(r) : std::pow(r, 1.0 / te->q));
    return {b - root, b + root};
  }
  const auto& bb = std::get<BlackBox>(family_);
  auto h = [&](double p) { return bb.evaluate(s, p); };
  const MomentumMinimum m = raw_min_over_p(s, tol);
  if (m.value > a) {
    if (m.value - a > tol.level) throw empty_level(m.value);
    return {m.argmin, m.argmin};
  }
  const double r = bb.radius(a);
  if (!(r > std::abs(m.argmin)) || !(h(r) > a) || !(h(-r) > a)) {
    std::ostringstream msg;
    msg << "black-box radius R(" << a << ") = " << r << " does not bracket the level set at s = " << s;
    throw ValidationError(msg.str());
  }
  return {bisect_boundary(h, a, m.argmin, -r), bisect_boundary(h, a, m.argmin, r)};
}

SigmaPair ArcHamiltonian::sigma_pm(double a, double s, const Tolerances& tol) const {
  require_unit(s, "sigma_pm");
  if (!reversed_) return raw_sigma_pm(a, s, tol);
  const SigmaPair r = raw_sigma_pm(a, 1.0 - s, tol);
  return {-r.plus, -r.minus};
}

std::vector<double> ArcHamiltonian::breakpoints() const {
  std::vector<double> out;
  if (const auto* te = std::get_if<TiltedEikonal>(&family_)) {
    for (double s : te->b.breakpoints()) out.push_back(s);
    for (double s : te->f.breakpoints()) out.push_back(s);
  }
  if (reversed_) {
    for (double& s : out) s = 1.0 - s;
  }
  return out;
}

std::pair<double, double> ArcHamiltonian::bottom_range(const Tolerances& tol) const {
  auto bottom = [&](double s) { return min_over_p(std::clamp(s, 0.0, 1.0), tol).value; };
  const std::size_t n = std::max<std::size_t>(tol.grid, 3);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = bottom(static_cast<double>(i) / static_cast<double>(n - 1));

  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  for (double s : breakpoints()) {
    const double v = bottom(s);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) return {lo, hi};

  // Golden refinement around every near-extremal local extremum of the grid;
  // the true extremum may sit in a neighbouring cell of a lower node.
  const double h = 1.0 / static_cast<double>(n - 1);
  const double margin = 1e-3 * (1.0 + hi - lo);
  auto window = [&](std::size_t i) {
    const double c = static_cast<double>(i) * h;
    return std::pair{std::max(0.0, c - h), std::min(1.0, c + h)};
  };
  const double grid_hi = hi;
  const double grid_lo = lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? values[i - 1] : values[i];
    const double right = i + 1 < n ? values[i + 1] : values[i];
    if (values[i] >= left && values[i] >= right && values[i] >= grid_hi - margin) {
      auto [a, b] = window(i);
      const MomentumMinimum m = golden_minimum([&](double s) { return -bottom(s); }, a, b, 1e-13);
      hi = std::max(hi, -m.value);
    }
    if (values[i] <= left && values[i] <= right && values[i] <= grid_lo + margin) {
      auto [a, b] = window(i);
      const MomentumMinimum m = golden_minimum(bottom, a, b, 1e-13);
      lo = std::min(lo, m.value);
    }
  }
  return {lo, hi};
}

double ArcHamiltonian::a_gamma(const Tolerances& tol) const { return bottom_range(tol).second; }

std::vector<std::string> ArcHamiltonian::validate(const Tolerances& tol, std::vector<double> levels) const {
  std::vector<std::string> issues;
  if (!std::holds_alternative<BlackBox>(family_)) return issues;
  const auto& bb = std::get<BlackBox>(family_);
  double floor_level = 0.0;
  try {
    floor_level = a_gamma(tol);
  } catch (const Error& e) {
    issues.emplace_back(e.what());
    return issues;
  }
  if (levels.empty()) levels = {floor_level, floor_level + 1.0, floor_level + 10.0};
  constexpr int kNodes = 17;
  constexpr int kSamples = 201;
  for (double a : levels) {
    const double r = bb.radius(a);
    for (int i = 0; i < kNodes; ++i) {
      const double s = static_cast<double>(i) / (kNodes - 1);
      std::ostringstream where;
      where << " at s = " << s << ", level " << a;
      if (!(bb.evaluate(s, r) > a) || !(bb.evaluate(s, -r) > a)) {
        issues.push_back("coercivity bracket fails" + where.str());
        continue;
      }
      std::vector<double> v(kSamples);
      for (int k = 0; k < kSamples; ++k) {
        v[k] = bb.evaluate(s, -r + 2.0 * r * k / (kSamples - 1));
      }
      const auto kmin = std::min_element(v.begin(), v.end()) - v.begin();
      const double slack = 1e-12 * (1.0 + std::abs(v[kmin]));
      bool unimodal = true;
      for (auto k = kmin; k > 0; --k) unimodal &= v[k - 1] + slack >= v[k];
      for (auto k = kmin; k + 1 < kSamples; ++k) unimodal &= v[k + 1] + slack >= v[k];
      if (!unimodal) issues.push_back("p -> H(s,p) is not unimodal" + where.str());
    }
  }
  return issues;
}

}  // namespace hjnet
