#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "spectra/equilibria.hpp"
#include "spectra/jacobi.hpp"
#include "spectra/rates.hpp"

namespace spectra {

/// Jacobi operator equal to a constant tail (tail_a, tail_b) beyond a finite head.
/// head.b and head.a may have different lengths; missing head entries take the
/// tail values.
struct TailJacobiModel {
  double tail_a = 1.0;
  double tail_b = 0.0;
  JacobiCoeffs head;

  static TailJacobiModel free_tail(JacobiCoeffs head = {});
  static TailJacobiModel mp_tail(double tau, JacobiCoeffs head = {});

  /// Number of leading rows that may differ from the tail.
  std::size_t head_length() const noexcept { return std::max(head.b.size(), head.a.size()); }
  double b(std::size_t j) const noexcept { return j < head.b.size() ? head.b[j] : tail_b; }
  double a(std::size_t j) const noexcept { return j < head.a.size() ? head.a[j] : tail_a; }

  /// Essential spectrum [tail_b - 2 tail_a, tail_b + 2 tail_a].
  Interval bulk() const noexcept { return {tail_b - 2.0 * tail_a, tail_b + 2.0 * tail_a}; }

  /// Throws ParameterError / InvalidMatrixError on nonpositive a-entries.
  void validate() const;

  /// n x n top-left section of the infinite matrix.
  JacobiCoeffs truncation(std::size_t n) const;
};

struct Outlier {
  double location = 0.0;
  double mass = 0.0;
};

/// Spectral measure split into the a.c. part on the bulk and the isolated atoms.
struct MeasureDecomposition {
  Interval bulk;
  RealFunction ac_density;        // Lebesgue density on the bulk
  std::function<double(const EdgePoint&)> ac_density_edge;  // same, by edge distance
  std::vector<Outlier> outliers;  // above the bulk (descending), then below (ascending)
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  std::vector<std::string> warnings;

  double ac_mass() const;
  double total_mass() const;
};

/// Stieltjes transform of the constant tail, -2 / ((z - b) + sqrt((z-b)^2 - 4a^2)).
std::complex<double> tail_transform(double tail_a, double tail_b, std::complex<double> z);

/// <e_1, (J - z)^{-1} e_1> by the backward continued fraction.
/// Throws DomainError for real z in the bulk, PoleError at an eigenvalue.
std::complex<double> m_function(const TailJacobiModel& model, std::complex<double> z);

/// Boundary value Im m(x + i0) / pi inside the bulk (0 outside).
double ac_density(const TailJacobiModel& model, double x);

/// Same at x = c + r cos(theta) on the bulk, using the exact boundary value of
/// the tail transform at that angle.
double ac_density_at_angle(const TailJacobiModel& model, double theta);
double ac_density_at(const TailJacobiModel& model, const EdgePoint& p);

/// Real eigenvalues outside the bulk with their masses (residues of m).
/// Roots closer than 1e-10 to a band edge are dropped with a warning.
std::vector<Outlier> outliers(const TailJacobiModel& model, std::vector<std::string>* warnings = nullptr);

/// Mass at an eigenvalue E from a central difference of 1/m.
double outlier_mass_numeric(const TailJacobiModel& model, double E);

MeasureDecomposition decompose(const TailJacobiModel& model);

/// K(reference | ac part) + sum over outliers of the family's edge cost.
RateReport measure_side_rate(const TailJacobiModel& model, const EquilibriumLaw& reference);

struct SumRuleReport {
  double jacobi_side = 0.0;
  double measure_side = 0.0;
  double gap = 0.0;
  std::vector<Outlier> outliers;
  RateReport jacobi_detail;
  RateReport measure_detail;
};

/// Both sides of the semicircle sum rule for a free-tail model.
SumRuleReport sumrule_verify(const TailJacobiModel& model);

struct LaguerreFamily {
  double tau = 1.0;
};

struct JacobiKNFamily {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
};

/// Coefficient side versus conjectured measure side. `label` is always
/// "CONJECTURE"; the gap is reported, never judged.
struct ProbeReport {
  std::string family;
  std::string label = "CONJECTURE";
  double coefficient_side = 0.0;
  double measure_side = 0.0;
  double gap = 0.0;  // coefficient_side - measure_side
  std::vector<Outlier> outliers;
  RateReport coefficient_detail;
  RateReport measure_detail;
  std::vector<std::string> flags;
};

/// Laguerre probe on a model with the MP(tau) tail. A failed bidiagonal
/// factorization is reported with the flag "not-positive-definite".
ProbeReport conjecture_probe(const TailJacobiModel& model, const LaguerreFamily& family);

/// Jacobi probe for Verblunsky data alpha_0..alpha_{L-1}, continued by the
/// almost-sure limits, mapped to [0,1].
ProbeReport conjecture_probe(const VerblunskyCoeffs& head, const JacobiKNFamily& family);

/// The [0,1] model of the Jacobi probe.
TailJacobiModel jacobi_probe_model(const VerblunskyCoeffs& head, double kappa1, double kappa2);

/// Kesten-McKay reference law of the Jacobi model with slopes (kappa1, kappa2).
EquilibriumLaw jacobi_reference_law(double kappa1, double kappa2);

}  // namespace spectra
