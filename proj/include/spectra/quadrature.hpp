#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace spectra {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double center() const noexcept { return 0.5 * (lo + hi); }
  double radius() const noexcept { return 0.5 * (hi - lo); }
  double length() const noexcept { return hi - lo; }
  bool contains_open(double x) const noexcept { return x > lo && x < hi; }
  bool contains_closed(double x) const noexcept { return x >= lo && x <= hi; }
};

/// A point x = c + r cos(theta) of an interval, stored through
/// cos^2(theta/2), sin^2(theta/2) and sin(theta) so both edge distances keep
/// full relative accuracy.
struct EdgePoint {
  double cos2_half = 0.0;  // (x - lo) / (2r)
  double sin2_half = 0.0;  // (hi - x) / (2r)
  double sine = 0.0;       // sin(theta)

  static EdgePoint from_angle(double theta) noexcept;
  /// From phi = pi - theta, for points close to the lower edge.
  static EdgePoint from_complement(double phi) noexcept;

  double cosine() const noexcept { return cos2_half - sin2_half; }
  /// x itself, measured from the nearer edge.
  double on(const Interval& s) const noexcept {
    return cos2_half < sin2_half ? s.lo + s.length() * cos2_half : s.hi - s.length() * sin2_half;
  }
};

enum class ChebKind {
  // weight sqrt(r^2 - (x-c)^2), degree-exact up to 2n-1
  SecondKind,
  // weight 1/sqrt(r^2 - (x-c)^2), degree-exact up to 2n-1
  FirstKind,
};

/// Gauss-Chebyshev rule mapped to [c - r, c + r] through x = c + r cos(theta).
/// sum_i weights[i] * f(nodes[i]) approximates the integral of f against the
/// rule's intrinsic weight; use `semicircle_grid` for SC-expectations.
struct ChebGrid {
  ChebKind kind = ChebKind::SecondKind;
  Interval interval;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
  double total_weight() const noexcept;
};

ChebGrid make_cheb_grid(ChebKind kind, std::size_t n, Interval interval);

/// Second-kind grid with weights rescaled so that sum w_i f(x_i) is the
/// expectation of f under the semicircle law on `interval`.
ChebGrid semicircle_grid(std::size_t n, Interval interval = {-2.0, 2.0});

using RealFunction = std::function<double(double)>;

/// Adaptive Gauss-Kronrod on [lo, hi]. Throws ConvergenceError when the
/// estimated error exceeds max(tol_abs, tol_rel * L1).
double integrate(const RealFunction& f, double lo, double hi, double tol_rel = 1e-13,
                 double tol_abs = 1e-15);

/// Integrates f over [lo, hi] after the substitution x = c + r cos(theta).
/// Square-root (and inverse square-root) endpoint behaviour becomes smooth in
/// theta, so densities with edge singularities integrate to full precision.
double integrate_edges(const RealFunction& f, double lo, double hi, double tol_rel = 1e-13,
                       double tol_abs = 1e-15);

/// Integrates f(theta) over [0, pi], with points past pi/2 built from pi - theta
/// so that both edges keep full relative accuracy.
double integrate_angle(const std::function<double(const EdgePoint&)>& f, double tol_rel = 1e-13,
                       double tol_abs = 1e-15);

/// Integrates f over [edge, x] (or [x, edge]) after t = edge +- u^2, for
/// integrands with a square-root zero at `edge`.
double integrate_from_edge(const RealFunction& f, double edge, double x, double tol_rel = 1e-13);

}  // namespace spectra
