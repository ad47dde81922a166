#include "spectra/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <limits>
#include <queue>
#include <vector>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

EdgePoint EdgePoint::from_angle(double theta) noexcept {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  return {c * c, s * s, std::sin(theta)};
}

EdgePoint EdgePoint::from_complement(double phi) noexcept {
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  return {s * s, c * c, std::sin(phi)};
}

double ChebGrid::total_weight() const noexcept {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

ChebGrid make_cheb_grid(ChebKind kind, std::size_t n, Interval interval) {
  if (n == 0) throw ParameterError("ChebGrid needs at least one node");
  if (!(interval.hi > interval.lo)) throw ParameterError("ChebGrid interval must be non-empty");
  ChebGrid g;
  g.kind = kind;
  g.interval = interval;
  g.nodes.resize(n);
  g.weights.resize(n);
  const double c = interval.center();
  const double r = interval.radius();
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    if (kind == ChebKind::SecondKind) {
      const double theta = pi * static_cast<double>(i + 1) / static_cast<double>(n + 1);
      const double s = std::sin(theta);
      g.nodes[i] = c + r * std::cos(theta);
      g.weights[i] = pi * r * r / static_cast<double>(n + 1) * s * s;
    } else {
      const double theta = pi * (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n));
      g.nodes[i] = c + r * std::cos(theta);
      g.weights[i] = pi / static_cast<double>(n);
    }
  }
  return g;
}

ChebGrid semicircle_grid(std::size_t n, Interval interval) {
  ChebGrid g = make_cheb_grid(ChebKind::SecondKind, n, interval);
  const double r = interval.radius();
  // semicircle density on [c-r, c+r] is 2 sqrt(r^2-(x-c)^2) / (pi r^2)
  const double scale = 2.0 / (std::numbers::pi * r * r);
  for (double& w : g.weights) w *= scale;
  return g;
}

double integrate(const RealFunction& f, double lo, double hi, double tol_rel, double tol_abs) {
  if (lo == hi) return 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  struct Panel {
    double a, b, value, err, l1;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  auto panel = [&](double a, double b) {
    Panel p{a, b, 0.0, 0.0, 0.0};
    p.value = GK::integrate(f, a, b, 0, 0.0, &p.err, &p.l1);
    // Boost reports the unrefined error estimate on the reference interval [-1, 1]
    p.err *= 0.5 * (b - a);
    return p;
  };
  // global bisection of the panel with the largest error, so the budget is
  // shared across the interval instead of halved at every level
  std::priority_queue<Panel> queue;
  queue.push(panel(lo, hi));
  double value = queue.top().value;
  double err = queue.top().err;
  double l1 = queue.top().l1;
  constexpr std::size_t kMaxPanels = 4000;
  auto target = [&] { return std::max(tol_abs, tol_rel * std::abs(value)); };
  // panels whose halves do not improve on a roundoff-level estimate are settled
  std::vector<Panel> settled;
  constexpr double kRoundoff = 1e4 * std::numeric_limits<double>::epsilon();
  while (!queue.empty() && err > target() && queue.size() + settled.size() < kMaxPanels) {
    const Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    queue.pop();
    const Panel left = panel(worst.a, mid);
    const Panel right = panel(mid, worst.b);
    if (left.err + right.err >= worst.err && worst.err <= kRoundoff * worst.l1) {
      settled.push_back(worst);
      continue;
    }
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    l1 += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
  }
  if (!std::isfinite(value)) throw ConvergenceError("quadrature produced a non-finite value");
  // resum to drop the drift of the running totals
  value = 0.0;
  err = 0.0;
  l1 = 0.0;
  for (const Panel& p : settled) queue.push(p);
  while (!queue.empty()) {
    value += queue.top().value;
    err += queue.top().err;
    l1 += queue.top().l1;
    queue.pop();
  }
  if (err > std::max({tol_abs, 1e3 * tol_rel * l1, 1e-9 * l1})) {
    std::ostringstream os;
    os << "adaptive quadrature did not converge on [" << lo << ", " << hi << "]: error estimate " << err;
    throw ConvergenceError(os.str());
  }
  return value;
}

double integrate_edges(const RealFunction& f, double lo, double hi, double tol_rel, double tol_abs) {
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  auto g = [&](double theta) {
    const double s = std::sin(theta);
    if (s <= 0.0) return 0.0;
    return f(c + r * std::cos(theta)) * r * s;
  };
  return integrate(g, 0.0, std::numbers::pi, tol_rel, tol_abs);
}

double integrate_angle(const std::function<double(const EdgePoint&)>& f, double tol_rel, double tol_abs) {
  const double half = 0.5 * std::numbers::pi;
  const double left = integrate([&](double t) { return f(EdgePoint::from_angle(t)); }, 0.0, half, tol_rel, tol_abs);
  const double right =
      integrate([&](double t) { return f(EdgePoint::from_complement(t)); }, 0.0, half, tol_rel, tol_abs);
  return left + right;
}

double integrate_from_edge(const RealFunction& f, double edge, double x, double tol_rel) {
  if (x == edge) return 0.0;
  const double sign = x > edge ? 1.0 : -1.0;
  const double umax = std::sqrt(std::abs(x - edge));
  auto g = [&](double u) { return f(edge + sign * u * u) * 2.0 * u; };
  return sign * integrate(g, 0.0, umax, tol_rel);
}

}  // namespace spectra
