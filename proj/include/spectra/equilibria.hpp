#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "spectra/quadrature.hpp"

namespace spectra {

enum class Family { SemiCircle, MarchenkoPastur, KestenMcKay, Arcsine };

enum class ArcsineInterval { Symmetric, Unit };  // [-2,2] or [0,1]

/// One of the classical equilibrium laws with its parameters.
class EquilibriumLaw {
 public:
  static EquilibriumLaw semicircle();
  static EquilibriumLaw marchenko_pastur(double tau);
  static EquilibriumLaw kesten_mckay(double u_minus, double u_plus);
  static EquilibriumLaw arcsine(ArcsineInterval variant = ArcsineInterval::Symmetric);

  Family family() const noexcept { return family_; }
  double tau() const noexcept { return tau_; }
  double u_minus() const noexcept { return u_minus_; }
  double u_plus() const noexcept { return u_plus_; }
  ArcsineInterval arcsine_interval() const noexcept { return interval_; }

  Interval support() const noexcept;

  /// Lebesgue density; 0 outside the open support.
  double density(double x) const;

  /// Lebesgue density at x = c + r cos(theta) on the support [c - r, c + r],
  /// with the edge distances computed from theta (no cancellation near the edges).
  double density_at_angle(double theta) const;
  double density_at(const EdgePoint& p) const;

  /// Cauchy-Stieltjes transform  int dmu(x) / (x - z), Herglotz branch.
  /// Throws DomainError for real z in the closed support.
  std::complex<double> stieltjes(std::complex<double> z) const;

  /// k-th moment (k >= 1) by edge-aware quadrature.
  double moment(int k) const;

  /// KMK normalizing constant C_{u-,u+}; 1 for the other families.
  double kmk_constant() const noexcept;

 private:
  EquilibriumLaw() = default;

  Family family_ = Family::SemiCircle;
  double tau_ = 1.0;
  double u_minus_ = 0.0;
  double u_plus_ = 1.0;
  ArcsineInterval interval_ = ArcsineInterval::Symmetric;
};

/// sqrt((z-lo)(z-hi)) with the branch cut on [lo, hi] and value ~ z at infinity.
std::complex<double> herglotz_sqrt(std::complex<double> z, double lo, double hi);

/// Marchenko-Pastur support edges a(tau) = (1 - sqrt tau)^2, b(tau) = (1 + sqrt tau)^2.
double mp_lower_edge(double tau);
double mp_upper_edge(double tau);

/// sigma_+-(b, c) = ([1 + sqrt(bc)] -+ sqrt((1-b)(1-c))) / 2, returned as (sigma_-, sigma_+).
std::pair<double, double> sigma_pm(double b, double c);

/// u_+-(x, y) = (sqrt((1-x)(1-y)) +- sqrt(xy))^2, returned as (u_-, u_+).
std::pair<double, double> u_pm(double x, double y);

/// Moments m_1, m_2, ... of a probability measure.
struct MomentVector {
  std::vector<double> values;  // values[k-1] = m_k

  std::size_t order() const noexcept { return values.size(); }
  double operator[](std::size_t k) const { return k == 0 ? 1.0 : values.at(k - 1); }

  static MomentVector generate(const std::function<double(int)>& moment, std::size_t order);

  /// True when every Hankel section [m_{i+j}], 0 <= i, j <= k with 2k <= order,
  /// is positive semidefinite up to `tol` relative to its trace.
  bool hankel_psd(double tol = 1e-10) const;
};

struct MomentDistance {
  double value = 0.0;           // truncated sum
  double remainder_bound = 0.0; // the omitted tail lies in [0, remainder_bound]
  std::size_t order = 0;
};

inline constexpr std::size_t kDefaultMomentOrder = 64;

/// sum_{k<=K} 2^-k |dk| / (1 + |dk|) with K = min(order, available moments).
MomentDistance moment_distance(const MomentVector& mu, const MomentVector& nu,
                               std::size_t order = kDefaultMomentOrder);

}  // namespace spectra
