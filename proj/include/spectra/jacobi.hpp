#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spectra/equilibria.hpp"
#include "spectra/error.hpp"

namespace spectra {

/// Diagonal b and off-diagonal a of a symmetric tridiagonal (Jacobi) matrix.
/// An n x n matrix reads b[0..n-1] and a[0..n-2].
struct JacobiCoeffs {
  std::vector<double> b;
  std::vector<double> a;

  std::size_t size() const noexcept { return b.size(); }

  /// Throws InvalidMatrixError unless every off-diagonal entry is > 0.
  void require_positive_offdiagonal() const;

  /// Top-left n x n section; throws RangeError when fewer entries exist.
  JacobiCoeffs section(std::size_t n) const;

  friend bool operator==(const JacobiCoeffs&, const JacobiCoeffs&) = default;
};

/// Verblunsky coefficients alpha_0, alpha_1, ... with alpha_{-1} = -1.
struct VerblunskyCoeffs {
  std::vector<double> alpha;

  /// alpha_k with the boundary conventions: -1 at k = -1, 0 below.
  double at(long k) const;
};

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// Finitely supported probability measure.
struct DiscreteMeasure {
  std::vector<Atom> atoms;

  std::size_t size() const noexcept { return atoms.size(); }
  double total_mass() const noexcept;
  double moment(int k) const noexcept;
  MomentVector moments(std::size_t order) const;

  /// Positive weights summing to 1 (1e-12), distinct locations (1e-13 of span).
  void validate() const;
  void sort_by_location();
};

inline constexpr double kAtomSeparationTol = 1e-13;
inline constexpr double kWeightSumTol = 1e-12;

// ---------------------------------------------------------------------------
// Symmetric tridiagonal eigenproblems

/// Eigenvalues and squared first components of the unit eigenvectors of the
/// n x n section, by implicit QL with Wilkinson shifts. Only the first row of
/// the rotation product is accumulated.
DiscreteMeasure spectral_decompose(const JacobiCoeffs& J, std::size_t n);
inline DiscreteMeasure spectral_decompose(const JacobiCoeffs& J) { return spectral_decompose(J, J.size()); }

/// Eigenvalues (ascending), no vectors.
std::vector<double> tridiagonal_eigenvalues(const JacobiCoeffs& J);

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count_below(const JacobiCoeffs& J, double x);

/// k-th smallest eigenvalue (0-based) by Sturm bisection.
double sturm_eigenvalue(const JacobiCoeffs& J, std::size_t k, double tol = 1e-14);
double largest_eigenvalue(const JacobiCoeffs& J, double tol = 1e-14);
double smallest_eigenvalue(const JacobiCoeffs& J, double tol = 1e-14);

/// Gershgorin enclosure of the spectrum.
Interval gershgorin_bounds(const JacobiCoeffs& J);

// ---------------------------------------------------------------------------
// Jacobi mapping

/// Lanczos on diag(locations) started from sqrt(weights), with full
/// reorthogonalization. Throws DegenerateMeasureError on coincident atoms.
JacobiCoeffs measure_to_jacobi(const DiscreteMeasure& mu);

/// m_r = <e_1, (J^[j])^r e_1> for r = 1..rmax by repeated tridiagonal mat-vec.
/// Works for any ring-like T (double, exact integers, ...).
template <class T>
std::vector<T> jacobi_moments_generic(std::span<const T> b, std::span<const T> a, std::size_t j,
                                      std::size_t rmax) {
  if (j == 0) throw RangeError("section size must be >= 1");
  if (b.size() < j || (j > 1 && a.size() < j - 1)) throw RangeError("coefficients shorter than the section");
  if (rmax > 2 * j - 1) throw RangeError("moment order exceeds 2j-1 for the j x j section");
  std::vector<T> v(j, T(0)), w(j, T(0));
  v[0] = T(1);
  std::vector<T> out;
  out.reserve(rmax);
  for (std::size_t r = 1; r <= rmax; ++r) {
    for (std::size_t i = 0; i < j; ++i) {
      T acc = b[i] * v[i];
      if (i > 0) acc += a[i - 1] * v[i - 1];
      if (i + 1 < j) acc += a[i] * v[i + 1];
      w[i] = acc;
    }
    std::swap(v, w);
    out.push_back(v[0]);
  }
  return out;
}

MomentVector jacobi_moments(const JacobiCoeffs& J, std::size_t j, std::size_t rmax);

/// Geronimus relations: Jacobi coefficients of the n x n matrix coded by
/// alpha_0..alpha_{2n-2}. Throws RangeError when some |alpha_k| >= 1.
JacobiCoeffs geronimus(const VerblunskyCoeffs& alpha, std::size_t n);

/// r(x) = 4x - 2 maps [0,1] onto [-2,2]; s(y) = (y+2)/4 is its inverse.
/// Arguments outside the nominal interval are extrapolated linearly.
constexpr double affine_r(double x) noexcept { return 4.0 * x - 2.0; }
constexpr double affine_s(double y) noexcept { return 0.25 * (y + 2.0); }
constexpr bool affine_r_extrapolates(double x) noexcept { return x < 0.0 || x > 1.0; }
constexpr bool affine_s_extrapolates(double y) noexcept { return y < -2.0 || y > 2.0; }

DiscreteMeasure pushforward_r(DiscreteMeasure mu);
DiscreteMeasure pushforward_s(DiscreteMeasure mu);

/// Jacobi coefficients of s(J) = (J + 2)/4, the image on [0,1].
JacobiCoeffs to_unit_interval(JacobiCoeffs J);

/// Lower bidiagonal factor B (diagonal d_1.., subdiagonal s_1..) with J = B B^T.
struct BidiagonalFactors {
  std::vector<double> d;  // d[k] = d_{k+1}
  std::vector<double> s;  // s[k] = s_{k+1}
};

/// Unique positive (d, s) with b_0 = d_1^2, b_k = s_k^2 + d_{k+1}^2, a_k = s_{k+1} d_{k+1}.
/// Throws NotPositiveDefiniteError when the forward recursion breaks down.
BidiagonalFactors ds_factorize(const JacobiCoeffs& J);

/// Inverse of ds_factorize: needs s.size() == d.size() - 1.
JacobiCoeffs assemble_bidiagonal(const BidiagonalFactors& f);

}  // namespace spectra
