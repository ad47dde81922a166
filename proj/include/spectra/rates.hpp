#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spectra/equilibria.hpp"
#include "spectra/jacobi.hpp"

namespace spectra {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct RateTerm {
  std::string label;
  double value = 0.0;
};

/// A rate-function value with its per-term breakdown.
struct RateReport {
  double value = 0.0;
  std::vector<RateTerm> terms;
  std::size_t truncation = 0;
  double tail_bound = 0.0;
  std::vector<std::string> flags;
  std::optional<double> alternate_form;  // Laguerre, tau = 1: the form in the Jacobi coefficients

  void add(std::string label, double v);
  bool has_flag(const std::string& f) const;
};

/// Extreme-eigenvalue cost with a flag telling whether x was on a leg where
/// the cost is defined (outside the bulk). Off-leg values are 0.
struct EdgeCost {
  double value = 0.0;
  bool on_leg = true;
};

/// int_2^|x| sqrt(t^2 - 4) dt.
EdgeCost rate_fg(double x);

/// Laguerre outlier cost for x >= b(tau) or 0 < x <= a(tau).
EdgeCost rate_fl(double x, double tau);

/// Jacobi outlier cost for x in [u_+, 1) or (0, u_-].
EdgeCost rate_fj(double x, double u_minus, double u_plus);

/// g(x) = x - 1 - log x for x > 0, +inf otherwise; G(x) = g(x^2).
double small_g(double x);
double big_G(double x);

enum class BetaRateVariant { Corrected, Literal };

/// Rate of beta_s(u n + delta, v n + delta') at q.
///  Corrected:    u log u + v log v - (u+v) log((u+v)/2) - u log(1-q) - v log(1+q),
///                zero exactly at q* = (v-u)/(u+v).
///  Literal: q(u-v) - u log(1+q) - v log(1-q).
double beta_h(double u, double v, double q, BetaRateVariant variant = BetaRateVariant::Corrected);

/// 1/2 sum b_j^2 + sum G(a_j) over the coefficients given; entries beyond are
/// the free ones (b = 0, a = 1) and contribute nothing. `order` limits the number
/// of diagonal terms summed (off-diagonal terms use order - 1).
RateReport hermite_rate(const JacobiCoeffs& J, std::optional<std::size_t> order = std::nullopt);

/// sum G(d_k) + tau sum G(s_k / sqrt(tau)). At tau = 1 it also evaluates
/// b_0 - 1 + sum_{k>=1}(b_k - 2) - 2 sum log a_k on the assembled matrix
/// (both sequences padded to a common length with the minimizer values) and
/// flags "jacobi-form-mismatch" beyond 1e-10.
RateReport laguerre_rate(std::span<const double> d, std::span<const double> s, double tau);

/// Rate of Verblunsky data in the Jacobi model with slopes (kappa1, kappa2).
/// Literal evaluates the closed sum with the paper's orientation; Corrected sums
/// the corrected beta_h with (u, v) = (1+kappa2, 1+kappa1) at even k and
/// (1+kappa1+kappa2, 1) at odd k, vanishing at `jacobi_kn_limits`.
RateReport jacobi_ensemble_rate(const VerblunskyCoeffs& alpha, double kappa1, double kappa2,
                                BetaRateVariant variant = BetaRateVariant::Corrected);

/// Reversed Kullback information K(P | Q) = int log(dP/dQ) dP, with P an
/// equilibrium law and Q given by its Lebesgue density on P's support.
/// Returns +inf when Q's density vanishes on P's support.
double kullback(const EquilibriumLaw& reference, const RealFunction& q_density);

/// Same, with Q's density supplied as a function of the point of P's support;
/// lets callers keep full precision near the edges.
double kullback_angular(const EquilibriumLaw& reference, const std::function<double(const EdgePoint&)>& q_at);

/// Grid version: sum_i w_i p_i log(p_i / q_i).
double kullback_grid(std::span<const double> p, std::span<const double> q, std::span<const double> w);

}  // namespace spectra
