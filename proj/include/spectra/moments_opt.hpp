#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spectra/jacobi.hpp"
#include "spectra/quadrature.hpp"

namespace spectra {

/// Prescribed moments c_1..c_{2l-1} (c_0 = 1 implied).
struct MomentConstraint {
  std::vector<double> c;

  /// l, from c.size() = 2l - 1. Throws ParameterError for even or empty c.
  std::size_t order() const;
  /// c_k with c_0 = 1.
  double at(std::size_t k) const { return k == 0 ? 1.0 : c.at(k - 1); }
};

/// Smallest eigenvalue of H_l = [c_{i+j}] over its trace exceeds 1e-10.
bool hankel_interior(const MomentConstraint& c, double rel_tol = 1e-10);

/// Both localized Hankel forms [2 c_{i+j} +- c_{i+j+1}], 0 <= i, j < l, are
/// positive definite: c is interior to the moment body of [-2,2].
bool interval_body_interior(const MomentConstraint& c, double rel_tol = 1e-10);

/// b_0..b_{l-1}, a_0..a_{l-2} reproducing c, from the Cholesky factor of the
/// l x (l+1) Hankel array. Throws BoundaryError when H_l is not interior.
JacobiCoeffs moments_to_jacobi(const MomentConstraint& c);

/// 1/2 sum b_j^2 + sum G(a_j) over the moments_to_jacobi output.
double constrained_rate_primal(const MomentConstraint& c);

struct DualResult {
  double value = 0.0;
  std::vector<double> v;  // v_0..v_{2l-1}
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
  bool certified = false;  // gradient norm below 1e-8
  std::vector<std::string> flags;
};

/// Maximizes v_0 + sum_j v_j c_j + int log(1 - v_0 - sum_j v_j x^j) dSC by
/// damped Newton from v = 0, with SC expectations taken on `grid`.
DualResult constrained_rate_dual(const MomentConstraint& c, const ChebGrid& grid);
DualResult constrained_rate_dual(const MomentConstraint& c);

}  // namespace spectra
