#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "spectra/jacobi.hpp"
#include "spectra/rng.hpp"

namespace spectra {

enum class EnsembleKind { Hermite, Laguerre, JacobiKN };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

/// Parameters of a tridiagonal beta-ensemble model.
///
/// Laguerre uses `m` when set, otherwise m = round(tau * n). The Jacobi model
/// uses the fixed exponents (a, b) unless both slopes are set, in which case
/// b(N) = beta' kappa1 N and a(N) = beta' kappa2 N.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Hermite;
  std::size_t n = 1;
  double beta = 2.0;
  std::optional<std::size_t> m;
  std::optional<double> tau;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> kappa1;
  std::optional<double> kappa2;
  bool unit_interval = false;  // Jacobi model: report the [0,1] image

  double beta_prime() const noexcept { return 0.5 * beta; }
  std::size_t laguerre_m() const;
  double laguerre_tau() const;
  double jacobi_a() const;
  double jacobi_b() const;
  bool has_slopes() const noexcept { return kappa1.has_value() && kappa2.has_value(); }

  /// Throws ParameterError on inconsistent fields.
  void validate() const;
};

/// Stream id for sample `index` of the given model size; independent of the
/// order in which samples are drawn.
std::uint64_t sample_stream_id(EnsembleKind kind, std::size_t n, std::uint64_t index);
RngStream sample_stream(std::uint64_t seed, const EnsembleSpec& spec, std::uint64_t index);

JacobiCoeffs sample_hermite(const EnsembleSpec& spec, RngStream& rng);

struct LaguerreSample {
  BidiagonalFactors factors;
  JacobiCoeffs jacobi;  // of L = B B^T, size m
};
LaguerreSample sample_laguerre(const EnsembleSpec& spec, RngStream& rng);

struct JacobiKNSample {
  VerblunskyCoeffs alpha;  // alpha_0..alpha_{2N-2}
  JacobiCoeffs jacobi;     // on [-2,2], or [0,1] when spec.unit_interval
};
JacobiKNSample sample_jacobi_kn(const EnsembleSpec& spec, RngStream& rng);

/// Tridiagonal matrix of any kind.
JacobiCoeffs sample_jacobi_matrix(const EnsembleSpec& spec, RngStream& rng);

/// Weighted spectral measure sum_k pi_k delta_{lambda_k}.
DiscreteMeasure spectral_measure(const JacobiCoeffs& J);
/// Empirical spectral distribution, mass 1/N at each eigenvalue.
DiscreteMeasure esd(const JacobiCoeffs& J);

/// Almost-sure limits of (alpha_{2p}, alpha_{2p+1}) in the Jacobi model with slopes.
std::pair<double, double> jacobi_kn_limits(double kappa1, double kappa2);

}  // namespace spectra
