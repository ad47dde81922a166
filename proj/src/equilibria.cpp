#include "spectra/equilibria.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

namespace {

constexpr double kPi = std::numbers::pi;

void require_unit_open(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream os;
    os << name << " must lie in (0,1), got " << v;
    throw ParameterError(os.str());
  }
}

}  // namespace

std::complex<double> herglotz_sqrt(std::complex<double> z, double lo, double hi) {
  return std::sqrt(z - lo) * std::sqrt(z - hi);
}

double mp_lower_edge(double tau) {
  const double s = 1.0 - std::sqrt(tau);
  return s * s;
}

double mp_upper_edge(double tau) {
  const double s = 1.0 + std::sqrt(tau);
  return s * s;
}

EquilibriumLaw EquilibriumLaw::semicircle() { return EquilibriumLaw{}; }

EquilibriumLaw EquilibriumLaw::marchenko_pastur(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    std::ostringstream os;
    os << "Marchenko-Pastur ratio tau must lie in (0,1], got " << tau;
    throw ParameterError(os.str());
  }
  EquilibriumLaw law;
  law.family_ = Family::MarchenkoPastur;
  law.tau_ = tau;
  return law;
}

EquilibriumLaw EquilibriumLaw::kesten_mckay(double u_minus, double u_plus) {
  if (!(u_minus >= 0.0 && u_minus < u_plus && u_plus <= 1.0)) {
    std::ostringstream os;
    os << "Kesten-McKay edges need 0 <= u_minus < u_plus <= 1, got (" << u_minus << ", " << u_plus << ")";
    throw ParameterError(os.str());
  }
  EquilibriumLaw law;
  law.family_ = Family::KestenMcKay;
  law.u_minus_ = u_minus;
  law.u_plus_ = u_plus;
  return law;
}

EquilibriumLaw EquilibriumLaw::arcsine(ArcsineInterval variant) {
  EquilibriumLaw law;
  law.family_ = Family::Arcsine;
  law.interval_ = variant;
  if (variant == ArcsineInterval::Unit) {
    law.u_minus_ = 0.0;
    law.u_plus_ = 1.0;
  }
  return law;
}

Interval EquilibriumLaw::support() const noexcept {
  switch (family_) {
    case Family::SemiCircle:
      return {-2.0, 2.0};
    case Family::MarchenkoPastur:
      return {mp_lower_edge(tau_), mp_upper_edge(tau_)};
    case Family::KestenMcKay:
      return {u_minus_, u_plus_};
    case Family::Arcsine:
      return interval_ == ArcsineInterval::Symmetric ? Interval{-2.0, 2.0} : Interval{0.0, 1.0};
  }
  return {};
}

double EquilibriumLaw::kmk_constant() const noexcept {
  if (family_ != Family::KestenMcKay) return 1.0;
  const double inv =
      0.5 * (1.0 - std::sqrt(u_minus_ * u_plus_) - std::sqrt((1.0 - u_minus_) * (1.0 - u_plus_)));
  return 1.0 / inv;
}

double EquilibriumLaw::density(double x) const {
  const Interval s = support();
  if (!s.contains_open(x)) return 0.0;
  switch (family_) {
    case Family::SemiCircle:
      return std::sqrt(4.0 - x * x) / (2.0 * kPi);
    case Family::MarchenkoPastur:
      return std::sqrt((x - s.lo) * (s.hi - x)) / (2.0 * kPi * tau_ * x);
    case Family::KestenMcKay:
      return kmk_constant() * std::sqrt((x - s.lo) * (s.hi - x)) / (2.0 * kPi * x * (1.0 - x));
    case Family::Arcsine:
      return 1.0 / (kPi * std::sqrt((x - s.lo) * (s.hi - x)));
  }
  return 0.0;
}

double EquilibriumLaw::density_at_angle(double theta) const { return density_at(EdgePoint::from_angle(theta)); }

double EquilibriumLaw::density_at(const EdgePoint& p) const {
  if (!(p.sine > 0.0)) return 0.0;
  const Interval s = support();
  const double r = s.radius();
  const double to_hi = 2.0 * r * p.sin2_half;
  const double x = p.on(s);
  const double root = r * p.sine;
  switch (family_) {
    case Family::SemiCircle:
      return root / (2.0 * kPi);
    case Family::MarchenkoPastur:
      return root / (2.0 * kPi * tau_ * x);
    case Family::KestenMcKay:
      return kmk_constant() * root / (2.0 * kPi * x * ((1.0 - s.hi) + to_hi));
    case Family::Arcsine:
      return 1.0 / (kPi * root);
  }
  return 0.0;
}

std::complex<double> EquilibriumLaw::stieltjes(std::complex<double> z) const {
  const Interval s = support();
  if (z.imag() == 0.0 && s.contains_closed(z.real())) {
    std::ostringstream os;
    os << "Stieltjes transform evaluated on the support at z = " << z.real();
    throw DomainError(os.str());
  }
  const std::complex<double> root = herglotz_sqrt(z, s.lo, s.hi);
  switch (family_) {
    case Family::SemiCircle:
      return 0.5 * (-z + root);
    case Family::MarchenkoPastur:
      return (-z + (1.0 - tau_) + root) / (2.0 * tau_ * z);
    case Family::KestenMcKay: {
      // pole-free completion of C sqrt((z-u-)(z-u+)) / (2 z (1-z))
      const double c = kmk_constant();
      const double at0 = std::sqrt(u_minus_ * u_plus_);
      const double at1 = std::sqrt((1.0 - u_minus_) * (1.0 - u_plus_));
      return 0.5 * c * (root / (z * (1.0 - z)) + at0 / z - at1 / (1.0 - z));
    }
    case Family::Arcsine:
      return -1.0 / root;
  }
  return {};
}

double EquilibriumLaw::moment(int k) const {
  if (k < 1) throw ParameterError("moment order must be >= 1");
  if (k % 2 == 1 && (family_ == Family::SemiCircle ||
                     (family_ == Family::Arcsine && interval_ == ArcsineInterval::Symmetric))) {
    return 0.0;
  }
  const Interval s = support();
  // angular form with the density evaluated from the edge distances, which
  // stays finite for the inverse square-root laws
  return integrate(
      [&](double theta) {
        const EdgePoint p = EdgePoint::from_angle(theta);
        return density_at(p) * std::pow(p.on(s), k) * s.radius() * p.sine;
      },
      0.0, std::numbers::pi);
}

std::pair<double, double> sigma_pm(double b, double c) {
  require_unit_open(b, "sigma_pm argument b");
  require_unit_open(c, "sigma_pm argument c");
  const double base = 1.0 + std::sqrt(b * c);
  const double spread = std::sqrt((1.0 - b) * (1.0 - c));
  return {0.5 * (base - spread), 0.5 * (base + spread)};
}

std::pair<double, double> u_pm(double x, double y) {
  require_unit_open(x, "u_pm argument x");
  require_unit_open(y, "u_pm argument y");
  const double p = std::sqrt((1.0 - x) * (1.0 - y));
  const double q = std::sqrt(x * y);
  return {(p - q) * (p - q), (p + q) * (p + q)};
}

MomentVector MomentVector::generate(const std::function<double(int)>& moment, std::size_t order) {
  MomentVector mv;
  mv.values.reserve(order);
  for (std::size_t k = 1; k <= order; ++k) mv.values.push_back(moment(static_cast<int>(k)));
  return mv;
}

bool MomentVector::hankel_psd(double tol) const {
  const std::size_t kmax = order() / 2;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const auto dim = static_cast<Eigen::Index>(k + 1);
    Eigen::MatrixXd h(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) h(i, j) = (*this)[static_cast<std::size_t>(i + j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol * h.trace()) return false;
  }
  return true;
}

MomentDistance moment_distance(const MomentVector& mu, const MomentVector& nu, std::size_t order) {
  const std::size_t k_max = std::min({order, mu.order(), nu.order()});
  MomentDistance d;
  d.order = k_max;
  double weight = 1.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    weight *= 0.5;
    const double delta = std::abs(mu[k] - nu[k]);
    d.value += weight * delta / (1.0 + delta);
  }
  d.remainder_bound = std::ldexp(1.0, -static_cast<int>(k_max));
  return d;
}

}  // namespace spectra
