#include "spectra/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spectra {

void JacobiCoeffs::require_positive_offdiagonal() const {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] > 0.0)) {
      std::ostringstream os;
      os << "off-diagonal entry a_" << k << " = " << a[k] << " is not strictly positive";
      throw InvalidMatrixError(os.str());
    }
  }
}

JacobiCoeffs JacobiCoeffs::section(std::size_t n) const {
  if (b.size() < n || (n > 1 && a.size() < n - 1)) {
    std::ostringstream os;
    os << "cannot take a " << n << "x" << n << " section of coefficients with |b| = " << b.size()
       << ", |a| = " << a.size();
    throw RangeError(os.str());
  }
  JacobiCoeffs out;
  out.b.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n));
  if (n > 1) out.a.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n - 1));
  return out;
}

double VerblunskyCoeffs::at(long k) const {
  if (k == -1) return -1.0;
  if (k < -1) return 0.0;
  const auto idx = static_cast<std::size_t>(k);
  if (idx >= alpha.size()) throw RangeError("Verblunsky coefficient index beyond the available data");
  return alpha[idx];
}

double DiscreteMeasure::total_mass() const noexcept {
  double s = 0.0;
  for (const auto& atom : atoms) s += atom.weight;
  return s;
}

double DiscreteMeasure::moment(int k) const noexcept {
  double s = 0.0;
  for (const auto& atom : atoms) s += atom.weight * std::pow(atom.location, k);
  return s;
}

MomentVector DiscreteMeasure::moments(std::size_t order) const {
  return MomentVector::generate([this](int k) { return moment(k); }, order);
}

void DiscreteMeasure::sort_by_location() {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.location < y.location; });
}

void DiscreteMeasure::validate() const {
  if (atoms.empty()) throw ParameterError("measure has no atoms");
  for (const auto& atom : atoms) {
    if (!(atom.weight > 0.0) || !std::isfinite(atom.location))
      throw ParameterError("atom weights must be positive and locations finite");
  }
  if (std::abs(total_mass() - 1.0) > kWeightSumTol) {
    std::ostringstream os;
    os << "atom weights sum to " << total_mass() << ", not 1";
    throw ParameterError(os.str());
  }
  std::vector<double> loc;
  loc.reserve(atoms.size());
  for (const auto& atom : atoms) loc.push_back(atom.location);
  std::sort(loc.begin(), loc.end());
  const double span = loc.back() - loc.front();
  for (std::size_t i = 1; i < loc.size(); ++i) {
    if (loc[i] - loc[i - 1] <= kAtomSeparationTol * span) {
      std::ostringstream os;
      os << "atoms at " << loc[i - 1] << " and " << loc[i] << " coincide";
      throw DegenerateMeasureError(os.str());
    }
  }
}

JacobiCoeffs measure_to_jacobi(const DiscreteMeasure& mu) {
  mu.validate();
  const std::size_t n = mu.size();
  std::vector<double> x(n);
  std::vector<std::vector<double>> q;
  q.reserve(n);
  std::vector<double> start(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = mu.atoms[i].location;
    start[i] = std::sqrt(mu.atoms[i].weight);
  }
  {
    double norm = 0.0;
    for (double v : start) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : start) v /= norm;
  }
  q.push_back(std::move(start));

  JacobiCoeffs J;
  J.b.reserve(n);
  J.a.reserve(n > 0 ? n - 1 : 0);
  std::vector<double> u(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& qk = q[k];
    for (std::size_t i = 0; i < n; ++i) u[i] = x[i] * qk[i];
    double bk = 0.0;
    for (std::size_t i = 0; i < n; ++i) bk += qk[i] * u[i];
    J.b.push_back(bk);
    if (k + 1 == n) break;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] -= bk * qk[i];
      if (k > 0) u[i] -= J.a[k - 1] * q[k - 1][i];
    }
    // two passes of classical Gram-Schmidt against every Lanczos vector
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j <= k; ++j) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += q[j][i] * u[i];
        for (std::size_t i = 0; i < n; ++i) u[i] -= proj * q[j][i];
      }
    }
    double ak = 0.0;
    for (double v : u) ak += v * v;
    ak = std::sqrt(ak);
    if (!(ak > 0.0)) throw DegenerateMeasureError("Lanczos breakdown: the measure has fewer distinct atoms than stated");
    J.a.push_back(ak);
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = u[i] / ak;
    q.push_back(std::move(next));
  }
  return J;
}

MomentVector jacobi_moments(const JacobiCoeffs& J, std::size_t j, std::size_t rmax) {
  MomentVector mv;
  mv.values = jacobi_moments_generic<double>(J.b, J.a, j, rmax);
  return mv;
}

JacobiCoeffs geronimus(const VerblunskyCoeffs& alpha, std::size_t n) {
  if (n == 0) throw RangeError("geronimus needs n >= 1");
  const std::size_t needed = 2 * n - 1;
  if (alpha.alpha.size() < needed) {
    std::ostringstream os;
    os << "an " << n << "x" << n << " matrix needs alpha_0..alpha_" << needed - 1;
    throw RangeError(os.str());
  }
  for (std::size_t k = 0; k < needed; ++k) {
    if (!(std::abs(alpha.alpha[k]) < 1.0)) {
      std::ostringstream os;
      os << "Verblunsky coefficient alpha_" << k << " = " << alpha.alpha[k] << " is outside (-1,1)";
      throw RangeError(os.str());
    }
  }
  JacobiCoeffs J;
  J.b.resize(n);
  J.a.resize(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const long i = static_cast<long>(k);
    const double odd_prev = alpha.at(2 * i - 1);
    const double even = alpha.at(2 * i);
    J.b[k] = (1.0 - odd_prev) * even - (1.0 + odd_prev) * alpha.at(2 * i - 2);
    if (k + 1 < n) J.a[k] = std::sqrt((1.0 - odd_prev) * (1.0 - even * even) * (1.0 + alpha.at(2 * i + 1)));
  }
  return J;
}

DiscreteMeasure pushforward_r(DiscreteMeasure mu) {
  for (auto& atom : mu.atoms) atom.location = affine_r(atom.location);
  return mu;
}

DiscreteMeasure pushforward_s(DiscreteMeasure mu) {
  for (auto& atom : mu.atoms) atom.location = affine_s(atom.location);
  return mu;
}

JacobiCoeffs to_unit_interval(JacobiCoeffs J) {
  for (double& v : J.b) v = affine_s(v);
  for (double& v : J.a) v *= 0.25;
  return J;
}

BidiagonalFactors ds_factorize(const JacobiCoeffs& J) {
  const std::size_t n = J.size();
  if (n == 0) return {};
  if (n > 1 && J.a.size() < n - 1) throw RangeError("off-diagonal shorter than n-1");
  BidiagonalFactors f;
  f.d.reserve(n);
  f.s.reserve(n - 1);
  if (!(J.b[0] > 0.0)) throw NotPositiveDefiniteError("b_0 <= 0: matrix is not positive definite");
  f.d.push_back(std::sqrt(J.b[0]));
  for (std::size_t k = 1; k < n; ++k) {
    const double s = J.a[k - 1] / f.d[k - 1];
    const double rest = J.b[k] - s * s;
    if (!(rest > 0.0)) {
      std::ostringstream os;
      os << "bidiagonal factorization breaks down at index " << k << " (pivot " << rest << ")";
      throw NotPositiveDefiniteError(os.str());
    }
    f.s.push_back(s);
    f.d.push_back(std::sqrt(rest));
  }
  return f;
}

JacobiCoeffs assemble_bidiagonal(const BidiagonalFactors& f) {
  const std::size_t n = f.d.size();
  if (n == 0) return {};
  if (f.s.size() + 1 != n) throw RangeError("bidiagonal factors need |s| = |d| - 1");
  JacobiCoeffs J;
  J.b.resize(n);
  J.a.resize(n - 1);
  J.b[0] = f.d[0] * f.d[0];
  for (std::size_t k = 1; k < n; ++k) J.b[k] = f.s[k - 1] * f.s[k - 1] + f.d[k] * f.d[k];
  for (std::size_t k = 0; k + 1 < n; ++k) J.a[k] = f.s[k] * f.d[k];
  return J;
}

}  // namespace spectra
