#include "spectra/ensembles.hpp"

#include <cmath>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Hermite:
      return "hermite";
    case EnsembleKind::Laguerre:
      return "laguerre";
    case EnsembleKind::JacobiKN:
      return "jacobi_kn";
  }
  return "unknown";
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  if (name == "hermite") return EnsembleKind::Hermite;
  if (name == "laguerre") return EnsembleKind::Laguerre;
  if (name == "jacobi_kn" || name == "jacobi") return EnsembleKind::JacobiKN;
  throw ParameterError("unknown ensemble kind '" + name + "'");
}

std::size_t EnsembleSpec::laguerre_m() const {
  if (m) return *m;
  const double t = tau.value_or(1.0);
  const auto rounded = static_cast<std::size_t>(std::llround(t * static_cast<double>(n)));
  return rounded == 0 ? 1 : rounded;
}

double EnsembleSpec::laguerre_tau() const {
  if (tau && !m) return *tau;
  return static_cast<double>(laguerre_m()) / static_cast<double>(n);
}

double EnsembleSpec::jacobi_a() const {
  if (has_slopes()) return beta_prime() * *kappa2 * static_cast<double>(n);
  return a;
}

double EnsembleSpec::jacobi_b() const {
  if (has_slopes()) return beta_prime() * *kappa1 * static_cast<double>(n);
  return b;
}

void EnsembleSpec::validate() const {
  if (n < 1) throw ParameterError("ensemble size N must be >= 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be > 0");
  if (kind == EnsembleKind::Laguerre) {
    if (tau && !(*tau > 0.0 && *tau <= 1.0)) throw ParameterError("Laguerre ratio tau must lie in (0,1]");
    if (m && (*m < 1 || *m > n)) throw ParameterError("Laguerre size m must satisfy 1 <= m <= N");
  }
  if (kind == EnsembleKind::JacobiKN) {
    if (kappa1.has_value() != kappa2.has_value())
      throw ParameterError("Jacobi slopes kappa1 and kappa2 must be given together");
    if (has_slopes() && (!(*kappa1 >= 0.0) || !(*kappa2 >= 0.0)))
      throw ParameterError("Jacobi slopes must be >= 0");
    if (!(jacobi_a() > -1.0) || !(jacobi_b() > -1.0)) throw ParameterError("Jacobi exponents must be > -1");
  }
}

std::uint64_t sample_stream_id(EnsembleKind kind, std::size_t n, std::uint64_t index) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(kind) + 1);
  h = mix64(h ^ static_cast<std::uint64_t>(n));
  return mix64(h ^ index);
}

RngStream sample_stream(std::uint64_t seed, const EnsembleSpec& spec, std::uint64_t index) {
  return RngStream(seed, sample_stream_id(spec.kind, spec.n, index));
}

JacobiCoeffs sample_hermite(const EnsembleSpec& spec, RngStream& rng) {
  if (spec.kind != EnsembleKind::Hermite) throw ParameterError("sample_hermite needs a Hermite spec");
  spec.validate();
  const std::size_t n = spec.n;
  const double bn = spec.beta_prime() * static_cast<double>(n);
  const double scale = 1.0 / bn;
  JacobiCoeffs J;
  J.b.resize(n);
  J.a.resize(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    J.b[j] = rng.normal(scale);
    if (j + 1 < n) {
      const double shape = spec.beta_prime() * static_cast<double>(n - 1 - j);
      J.a[j] = std::sqrt(rng.gamma(shape, scale));
    }
  }
  return J;
}

LaguerreSample sample_laguerre(const EnsembleSpec& spec, RngStream& rng) {
  if (spec.kind != EnsembleKind::Laguerre) throw ParameterError("sample_laguerre needs a Laguerre spec");
  spec.validate();
  const std::size_t n = spec.n;
  const std::size_t m = spec.laguerre_m();
  const double bp = spec.beta_prime();
  const double scale = 1.0 / (bp * static_cast<double>(n));
  LaguerreSample out;
  out.factors.d.resize(m);
  out.factors.s.resize(m - 1);
  for (std::size_t j = 1; j <= m; ++j) {
    out.factors.d[j - 1] = std::sqrt(rng.gamma(bp * static_cast<double>(n + 1 - j), scale));
    if (j < m) out.factors.s[j - 1] = std::sqrt(rng.gamma(bp * static_cast<double>(m - j), scale));
  }
  out.jacobi = assemble_bidiagonal(out.factors);
  return out;
}

JacobiKNSample sample_jacobi_kn(const EnsembleSpec& spec, RngStream& rng) {
  if (spec.kind != EnsembleKind::JacobiKN) throw ParameterError("sample_jacobi_kn needs a Jacobi spec");
  spec.validate();
  const std::size_t n = spec.n;
  const double bp = spec.beta_prime();
  const double ea = spec.jacobi_a();
  const double eb = spec.jacobi_b();
  JacobiKNSample out;
  out.alpha.alpha.assign(2 * n - 1, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    const double rem = static_cast<double>(n - p - 1) * bp;
    out.alpha.alpha[2 * p] = rng.beta_s(rem + ea + 1.0, rem + eb + 1.0);
    if (p >= 1) out.alpha.alpha[2 * p - 1] = rng.beta_s(rem + ea + eb + 2.0, static_cast<double>(n - p) * bp);
  }
  out.jacobi = geronimus(out.alpha, n);
  if (spec.unit_interval) out.jacobi = to_unit_interval(std::move(out.jacobi));
  return out;
}

JacobiCoeffs sample_jacobi_matrix(const EnsembleSpec& spec, RngStream& rng) {
  switch (spec.kind) {
    case EnsembleKind::Hermite:
      return sample_hermite(spec, rng);
    case EnsembleKind::Laguerre:
      return sample_laguerre(spec, rng).jacobi;
    case EnsembleKind::JacobiKN:
      return sample_jacobi_kn(spec, rng).jacobi;
  }
  throw ParameterError("unknown ensemble kind");
}

DiscreteMeasure spectral_measure(const JacobiCoeffs& J) { return spectral_decompose(J, J.size()); }

DiscreteMeasure esd(const JacobiCoeffs& J) {
  const auto eig = tridiagonal_eigenvalues(J);
  DiscreteMeasure mu;
  const double w = 1.0 / static_cast<double>(eig.size());
  for (double x : eig) mu.atoms.push_back({x, w});
  return mu;
}

std::pair<double, double> jacobi_kn_limits(double kappa1, double kappa2) {
  const double denom = 2.0 + kappa1 + kappa2;
  return {(kappa1 - kappa2) / denom, -(kappa1 + kappa2) / denom};
}

}  // namespace spectra
