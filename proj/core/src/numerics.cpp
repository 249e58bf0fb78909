#include "hjnet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hjnet/error.hpp"

namespace hjnet {

SigmaProfile::SigmaProfile(ArcHamiltonian h, double level, const Tolerances& tol)
    : h_(std::move(h)), level_(level), tol_(tol) {
  std::size_t n = tol.grid > 2 ? tol.grid - 1 : 2;
  if (n % 2 != 0) ++n;

  std::vector<SigmaPair> nodes(n + 1);
  for (std::size_t i = 0; i <= n; ++i) nodes[i] = h_.sigma_pm(level_, static_cast<double>(i) / n, tol_);

  std::vector<SigmaPair> mids;
  std::vector<double> cell_plus;
  std::vector<double> cell_minus;
  for (;;) {
    const double hstep = 1.0 / static_cast<double>(n);
    mids.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      mids[i] = h_.sigma_pm(level_, (static_cast<double>(i) + 0.5) * hstep, tol_);
    }
    cell_plus.resize(n);
    cell_minus.resize(n);
    double fine_plus = 0.0, fine_minus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cell_plus[i] = hstep / 6.0 * (nodes[i].plus + 4.0 * mids[i].plus + nodes[i + 1].plus);
      cell_minus[i] = hstep / 6.0 * (nodes[i].minus + 4.0 * mids[i].minus + nodes[i + 1].minus);
      fine_plus += cell_plus[i];
      fine_minus += cell_minus[i];
    }
    double coarse_plus = 0.0, coarse_minus = 0.0;
    for (std::size_t i = 0; i + 2 <= n; i += 2) {
      coarse_plus += 2.0 * hstep / 6.0 * (nodes[i].plus + 4.0 * nodes[i + 1].plus + nodes[i + 2].plus);
      coarse_minus += 2.0 * hstep / 6.0 * (nodes[i].minus + 4.0 * nodes[i + 1].minus + nodes[i + 2].minus);
    }
    error_estimate_ = std::max(std::abs(fine_plus - coarse_plus), std::abs(fine_minus - coarse_minus)) / 15.0;
    if (error_estimate_ <= tol_.quadrature || 2 * n > tol_.max_cells) break;

    // Refine: old midpoints become nodes of the doubled grid.
    std::vector<SigmaPair> refined(2 * n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      refined[2 * i] = nodes[i];
      refined[2 * i + 1] = mids[i];
    }
    refined[2 * n] = nodes[n];
    nodes = std::move(refined);
    n *= 2;
  }

  cells_ = n;
  nodes_ = std::move(nodes);
  cum_plus_.assign(n + 1, 0.0);
  cum_minus_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cum_plus_[i + 1] = cum_plus_[i] + cell_plus[i];
    cum_minus_[i + 1] = cum_minus_[i] + cell_minus[i];
  }
  double spread = 0.0;
  for (const SigmaPair& p : nodes_) spread = std::max(spread, p.plus - p.minus);
  degenerate_ = spread <= tol_.momentum;
}

SigmaPair SigmaProfile::at(double s) const { return h_.sigma_pm(level_, s, tol_); }

double SigmaProfile::sigma(double s, Branch branch) const {
  const SigmaPair p = at(s);
  return branch == Branch::plus ? p.plus : p.minus;
}

double SigmaProfile::partial(double s1, double s2, Branch branch) const {
  if (s2 <= s1) return 0.0;
  const SigmaPair a = at(s1);
  const SigmaPair m = at(0.5 * (s1 + s2));
  const SigmaPair b = at(s2);
  if (branch == Branch::plus) return (s2 - s1) / 6.0 * (a.plus + 4.0 * m.plus + b.plus);
  return (s2 - s1) / 6.0 * (a.minus + 4.0 * m.minus + b.minus);
}

double SigmaProfile::cumulative(double s, Branch branch) const {
  const auto& cum = branch == Branch::plus ? cum_plus_ : cum_minus_;
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return cum.back();
  auto i = static_cast<std::size_t>(std::floor(s * static_cast<double>(cells_)));
  i = std::min(i, cells_);
  const double base = node(i);
  if (base == s) return cum[i];
  return cum[i] + partial(base, s, branch);
}

double SigmaProfile::integral(double s1, double s2, Branch branch) const {
  if (!(s1 >= 0.0 && s1 <= 1.0 && s2 >= 0.0 && s2 <= 1.0)) {
    std::ostringstream msg;
    msg << "integrate_sigma: range [" << s1 << ", " << s2 << "] is outside [0,1]";
    throw DomainError(msg.str());
  }
  if (s1 == s2) return 0.0;
  if (s2 < s1) return -integral(s2, s1, branch);
  const auto n = static_cast<double>(cells_);
  const auto c1 = static_cast<std::size_t>(std::floor(s1 * n));
  const double next = node(std::min(c1 + 1, cells_));
  if (s2 <= next && node(c1) != s1 && s2 != next) return partial(s1, s2, branch);
  return cumulative(s2, branch) - cumulative(s1, branch);
}

double SigmaProfile::integral_mix(double s1, double s2, double lambda) const {
  if (lambda == 0.0) return integral(s1, s2, Branch::plus);
  if (lambda == 1.0) return integral(s1, s2, Branch::minus);
  return lambda * integral(s1, s2, Branch::minus) + (1.0 - lambda) * integral(s1, s2, Branch::plus);
}

double SigmaProfile::total(Branch branch) const {
  return branch == Branch::plus ? cum_plus_.back() : cum_minus_.back();
}

SigmaPair sigma_pm(const ArcHamiltonian& h, double a, double s, const Tolerances& tol) {
  return h.sigma_pm(a, s, tol);
}

double integrate_sigma(const ArcHamiltonian& h, double a, double s1, double s2, Branch branch,
                       const Tolerances& tol) {
  if (!(0.0 <= s1 && s1 <= s2 && s2 <= 1.0)) {
    std::ostringstream msg;
    msg << "integrate_sigma: need 0 <= s1 <= s2 <= 1, got [" << s1 << ", " << s2 << "]";
    throw DomainError(msg.str());
  }
  if (s1 == s2) return 0.0;
  return SigmaProfile(h, a, tol).integral(s1, s2, branch);
}

double edge_weight(const SigmaProfile& profile, Orientation orientation) {
  return orientation == Orientation::forward ? profile.total(Branch::plus) : -profile.total(Branch::minus);
}

double edge_weight(const ArcHamiltonian& h, double a, Orientation orientation, const Tolerances& tol) {
  return edge_weight(SigmaProfile(h, a, tol), orientation);
}

double c_gamma(const ArcHamiltonian& h, const Tolerances& tol) {
  if (!h.closed()) throw MisuseError("c_gamma is defined here for closed arcs only");
  const double floor_level = h.a_gamma(tol);
  auto gap = [&](double a) {
    const SigmaProfile p(h, a, tol);
    return std::min(-p.total(Branch::minus), p.total(Branch::plus));
  };
  if (gap(floor_level) >= 0.0) return floor_level;

  double lo = floor_level;
  double step = 1.0;
  double hi = floor_level + step;
  int doublings = 0;
  while (gap(hi) <= 0.0) {
    if (++doublings > 64) throw ConsistencyError("c_gamma: no sign change after 64 bracket doublings");
    lo = hi;
    step *= 2.0;
    hi = floor_level + step;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double g = gap(mid);
    if (g >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= tol.level && gap(hi) <= tol.level) break;
  }
  return hi;
}

}  // namespace hjnet
