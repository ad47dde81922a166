#include "spectra/sumrule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectra/ensembles.hpp"
#include "spectra/error.hpp"
#include "spectra/quadrature.hpp"

namespace spectra {

namespace {

constexpr double kEdgeExclusion = 1e-10;
constexpr std::size_t kSearchGrid = 4096;

bool close(double x, double y, double tol = 1e-12) { return std::abs(x - y) <= tol * (1.0 + std::abs(y)); }

// value and z-derivative
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

Dual operator*(Dual x, Dual y) { return {x.v * y.v, x.d * y.v + x.v * y.d}; }
Dual operator-(Dual x, Dual y) { return {x.v - y.v, x.d - y.d}; }
Dual scaled(Dual x, double c) { return {c * x.v, c * x.d}; }

// Real tail transform and derivative for real z outside the closed bulk.
Dual real_tail(const TailJacobiModel& model, double z) {
  const Interval bulk = model.bulk();
  const double w = z - model.tail_b;
  const double r = std::copysign(std::sqrt((z - bulk.lo) * (z - bulk.hi)), w);
  const double m = -2.0 / (w + r);
  // 2 a^2 m + (z - b) = r
  return {m, -m / r};
}

// det of rows [start, K) of J^[K] - z - a_{K-1}^2 m_tail(z) e_K e_K^T with its
// derivative, as mantissa * 2^exponent.
struct ScaledDet {
  Dual value;
  long exponent = 0;
};

ScaledDet secular_det(const TailJacobiModel& model, double z, std::size_t start) {
  const std::size_t K = model.head_length();
  ScaledDet out;
  if (start >= K) {
    out.value = {1.0, 0.0};
    return out;
  }
  const Dual tail = real_tail(model, z);
  Dual prev{1.0, 0.0};
  Dual cur{1.0, 0.0};
  for (std::size_t j = start; j < K; ++j) {
    Dual diag{model.b(j) - z, -1.0};
    if (j + 1 == K) {
      const double a2 = model.a(K - 1) * model.a(K - 1);
      diag = diag - scaled(tail, a2);
    }
    if (j == start) {
      prev = {1.0, 0.0};
      cur = diag;
    } else {
      const double a2 = model.a(j - 1) * model.a(j - 1);
      const Dual next = diag * cur - scaled(prev, a2);
      prev = cur;
      cur = next;
    }
    const double size = std::abs(cur.v) + std::abs(cur.d);
    if (size > 0x1.0p200) {
      cur = scaled(cur, 0x1.0p-200);
      prev = scaled(prev, 0x1.0p-200);
      out.exponent += 200;
    }
  }
  out.value = cur;
  return out;
}

double secular(const TailJacobiModel& model, double z) { return secular_det(model, z, 0).value.v; }

double spectral_bound(const TailJacobiModel& model) {
  const std::size_t K = model.head_length();
  double bound = std::abs(model.tail_b) + 2.0 * model.tail_a;
  for (std::size_t j = 0; j <= K; ++j) {
    const double left = j > 0 ? model.a(j - 1) : 0.0;
    bound = std::max(bound, std::abs(model.b(j)) + left + model.a(j));
  }
  return bound;
}

double bisect_root(const TailJacobiModel& model, double lo, double hi, double flo) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = secular(model, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double residue_mass(const TailJacobiModel& model, double E) {
  const ScaledDet s0 = secular_det(model, E, 0);
  const ScaledDet s1 = secular_det(model, E, 1);
  return -std::ldexp(s1.value.v / s0.value.d, static_cast<int>(s1.exponent - s0.exponent));
}

std::vector<Outlier> search_side(const TailJacobiModel& model, int side, std::vector<std::string>& warnings) {
  const Interval bulk = model.bulk();
  const double edge = side > 0 ? bulk.hi : bulk.lo;
  const double bound = spectral_bound(model);
  const double reach = side > 0 ? bound - bulk.hi : bound + bulk.lo;
  const double width = std::max(50.0 * model.tail_a, reach + 1.0);
  auto at = [&](double t) { return edge + side * (kEdgeExclusion + width * t * t); };

  // a sign change between the edge itself and edge + 1e-10 is a degenerate root
  const double f_edge = secular(model, edge);
  double z_prev = at(0.0);
  double f_prev = secular(model, z_prev);
  if (f_edge == 0.0 || (f_edge < 0.0) != (f_prev < 0.0)) {
    std::ostringstream os;
    os << "edge-degenerate root within " << kEdgeExclusion << " of " << edge << " excluded";
    warnings.push_back(os.str());
  }

  std::vector<Outlier> found;
  for (std::size_t i = 1; i <= kSearchGrid; ++i) {
    const double z = at(static_cast<double>(i) / kSearchGrid);
    const double f = secular(model, z);
    double root = 0.0;
    bool hit = false;
    if (f == 0.0) {
      root = z;
      hit = true;
    } else if (f_prev != 0.0 && (f < 0.0) != (f_prev < 0.0)) {
      root = side > 0 ? bisect_root(model, z_prev, z, f_prev) : bisect_root(model, z, z_prev, f);
      hit = true;
    }
    if (hit) found.push_back({root, residue_mass(model, root)});
    z_prev = z;
    f_prev = f;
  }
  if (found.size() > model.head_length()) {
    warnings.emplace_back("more outliers on one side than head rows; search grid suspect");
  }
  for (const Outlier& o : found) {
    if (!(o.mass > 0.0 && o.mass <= 1.0 + 1e-12)) {
      std::ostringstream os;
      os << "outlier at " << o.location << " has mass " << o.mass << " outside (0,1]";
      warnings.push_back(os.str());
    }
  }
  return found;  // ordered away from the edge
}

bool same_interval(Interval x, Interval y) { return close(x.lo, y.lo, 1e-9) && close(x.hi, y.hi, 1e-9); }

EdgeCost edge_cost(const EquilibriumLaw& ref, double E) {
  switch (ref.family()) {
    case Family::SemiCircle:
      return rate_fg(E);
    case Family::MarchenkoPastur:
      return rate_fl(E, ref.tau());
    case Family::KestenMcKay:
      return rate_fj(E, ref.u_minus(), ref.u_plus());
    case Family::Arcsine:
      if (ref.arcsine_interval() == ArcsineInterval::Unit) return rate_fj(E, 0.0, 1.0);
      return {0.0, false};
  }
  return {0.0, false};
}

double signed_gap(double lhs, double rhs, std::vector<std::string>& flags) {
  if (std::isinf(lhs) && std::isinf(rhs)) {
    flags.emplace_back("both-sides-infinite");
    return 0.0;
  }
  return lhs - rhs;
}

// keep the first `keep` terms, lump the rest
void compress_terms(RateReport& r, std::size_t keep) {
  if (r.terms.size() <= keep + 1) return;
  double rest = 0.0;
  for (std::size_t i = keep; i < r.terms.size(); ++i) rest += r.terms[i].value;
  std::ostringstream os;
  os << "remaining " << (r.terms.size() - keep) << " terms";
  r.terms.resize(keep);
  r.terms.push_back({os.str(), rest});
}

}  // namespace

TailJacobiModel TailJacobiModel::free_tail(JacobiCoeffs head) {
  TailJacobiModel m;
  m.head = std::move(head);
  return m;
}

TailJacobiModel TailJacobiModel::mp_tail(double tau, JacobiCoeffs head) {
  if (!(tau > 0.0 && tau <= 1.0)) throw ParameterError("MP tail needs tau in (0,1]");
  TailJacobiModel m;
  m.tail_a = std::sqrt(tau);
  m.tail_b = 1.0 + tau;
  m.head = std::move(head);
  return m;
}

void TailJacobiModel::validate() const {
  if (!(tail_a > 0.0) || !std::isfinite(tail_a)) throw ParameterError("tail a must be > 0");
  if (!std::isfinite(tail_b)) throw ParameterError("tail b must be finite");
  for (double v : head.b) {
    if (!std::isfinite(v)) throw ParameterError("head b entries must be finite");
  }
  for (std::size_t j = 0; j < head.a.size(); ++j) {
    if (!(head.a[j] > 0.0) || !std::isfinite(head.a[j])) {
      std::ostringstream os;
      os << "head a_" << j << " = " << head.a[j] << " must be > 0";
      throw InvalidMatrixError(os.str());
    }
  }
}

JacobiCoeffs TailJacobiModel::truncation(std::size_t n) const {
  JacobiCoeffs J;
  J.b.resize(n);
  J.a.resize(n > 0 ? n - 1 : 0);
  for (std::size_t j = 0; j < n; ++j) {
    J.b[j] = b(j);
    if (j + 1 < n) J.a[j] = a(j);
  }
  return J;
}

double MeasureDecomposition::ac_mass() const {
  if (!ac_density_edge) return integrate_edges(ac_density, bulk.lo, bulk.hi, 1e-12, 1e-15);
  const double r = bulk.radius();
  return integrate_angle([&](const EdgePoint& p) { return ac_density_edge(p) * r * p.sine; }, 1e-12, 1e-15);
}

double MeasureDecomposition::total_mass() const {
  double mass = ac_mass();
  for (const Outlier& o : outliers) mass += o.mass;
  return mass;
}

std::complex<double> tail_transform(double tail_a, double tail_b, std::complex<double> z) {
  const std::complex<double> root = herglotz_sqrt(z, tail_b - 2.0 * tail_a, tail_b + 2.0 * tail_a);
  return -2.0 / ((z - tail_b) + root);
}

namespace {

std::complex<double> strip(const TailJacobiModel& model, std::complex<double> z, std::complex<double> m) {
  // m holds m_j at the top of the loop
  std::size_t j = model.head_length();
  while (j > 0) {
    const double a = model.a(j - 1);
    const std::complex<double> denom = model.b(j - 1) - z - a * a * m;
    if (denom == 0.0) {
      if (j == 1) {
        std::ostringstream os;
        os << "m-function pole at z = " << z.real();
        throw PoleError(os.str());
      }
      // m_{j-1} is infinite, so m_{j-2} = 0
      m = 0.0;
      j -= 2;
      continue;
    }
    m = 1.0 / denom;
    --j;
  }
  return m;
}

// Im m(x + i0) from the boundary value of the tail. The imaginary part is
// carried as a product, Im m_{j-1} = a^2 Im m_j / |denominator|^2, so its
// relative accuracy survives when it is tiny next to the real part.
double strip_boundary_imag(const TailJacobiModel& model, double x, std::complex<double> m) {
  double im = m.imag();
  for (std::size_t j = model.head_length(); j > 0; --j) {
    const double a = model.a(j - 1);
    const std::complex<double> denom = model.b(j - 1) - x - a * a * m;
    const double n2 = std::norm(denom);
    if (!(n2 > 0.0)) return 0.0;
    im = a * a * im / n2;
    m = {denom.real() / n2, im};
  }
  return im;
}

}  // namespace

std::complex<double> m_function(const TailJacobiModel& model, std::complex<double> z) {
  model.validate();
  if (z.imag() == 0.0 && model.bulk().contains_closed(z.real())) {
    std::ostringstream os;
    os << "m-function evaluated on the bulk at z = " << z.real();
    throw DomainError(os.str());
  }
  const std::complex<double> m = strip(model, z, tail_transform(model.tail_a, model.tail_b, z));
  if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) throw PoleError("m-function is not finite");
  return m;
}

double ac_density(const TailJacobiModel& model, double x) {
  const Interval bulk = model.bulk();
  if (!bulk.contains_open(x)) return 0.0;
  const std::complex<double> z(x, 0.0);  // +0 imaginary part selects the upper boundary value
  const std::complex<double> m = strip(model, z, tail_transform(model.tail_a, model.tail_b, z));
  return std::max(0.0, m.imag() / std::numbers::pi);
}

double ac_density_at_angle(const TailJacobiModel& model, double theta) {
  return ac_density_at(model, EdgePoint::from_angle(theta));
}

double ac_density_at(const TailJacobiModel& model, const EdgePoint& p) {
  if (!(p.sine > 0.0)) return 0.0;
  const double x = p.on(model.bulk());
  // boundary value of the tail transform, -(1/a) e^{-i theta}
  const std::complex<double> tail = -std::complex<double>(p.cosine(), -p.sine) / model.tail_a;
  return std::max(0.0, strip_boundary_imag(model, x, tail) / std::numbers::pi);
}

std::vector<Outlier> outliers(const TailJacobiModel& model, std::vector<std::string>* warnings) {
  model.validate();
  std::vector<std::string> local;
  std::vector<Outlier> out;
  if (model.head_length() == 0) return out;
  auto plus = search_side(model, +1, local);
  auto minus = search_side(model, -1, local);
  std::sort(plus.begin(), plus.end(), [](const Outlier& x, const Outlier& y) { return x.location > y.location; });
  std::sort(minus.begin(), minus.end(), [](const Outlier& x, const Outlier& y) { return x.location < y.location; });
  out = std::move(plus);
  out.insert(out.end(), minus.begin(), minus.end());
  if (warnings) warnings->insert(warnings->end(), local.begin(), local.end());
  return out;
}

double outlier_mass_numeric(const TailJacobiModel& model, double E) {
  const double h = 1e-6 * std::max(1.0, std::abs(E));
  const double fp = (1.0 / m_function(model, {E + h, 0.0})).real();
  const double fm = (1.0 / m_function(model, {E - h, 0.0})).real();
  return -1.0 / ((fp - fm) / (2.0 * h));
}

MeasureDecomposition decompose(const TailJacobiModel& model) {
  MeasureDecomposition d;
  d.bulk = model.bulk();
  d.outliers = outliers(model, &d.warnings);
  for (const Outlier& o : d.outliers) {
    if (o.location > d.bulk.hi) {
      ++d.n_plus;
    } else {
      ++d.n_minus;
    }
  }
  d.ac_density = [model](double x) { return ac_density(model, x); };
  d.ac_density_edge = [model](const EdgePoint& p) { return ac_density_at(model, p); };
  return d;
}

RateReport measure_side_rate(const TailJacobiModel& model, const EquilibriumLaw& reference) {
  if (!same_interval(model.bulk(), reference.support())) {
    std::ostringstream os;
    os << "reference support [" << reference.support().lo << ", " << reference.support().hi
       << "] does not match the model bulk [" << model.bulk().lo << ", " << model.bulk().hi << "]";
    throw ParameterError(os.str());
  }
  RateReport report;
  const MeasureDecomposition dec = decompose(model);
  report.flags = dec.warnings;
  const double k = kullback_angular(reference, [&](const EdgePoint& p) { return ac_density_at(model, p); });
  report.add("kullback", k);
  if (std::isinf(k)) report.flags.emplace_back("ac-density-vanishes");
  for (const Outlier& o : dec.outliers) {
    const EdgeCost c = edge_cost(reference, o.location);
    std::ostringstream os;
    os.precision(12);
    os << "F(" << o.location << ")";
    if (!c.on_leg) {
      report.flags.emplace_back("outlier-off-leg");
      report.add(os.str(), kInf);
    } else {
      report.add(os.str(), c.value);
    }
  }
  report.truncation = model.head_length();
  return report;
}

SumRuleReport sumrule_verify(const TailJacobiModel& model) {
  if (!close(model.tail_a, 1.0, 1e-14) || !close(model.tail_b, 0.0, 1e-14)) {
    throw ParameterError("sumrule_verify needs the free tail (a = 1, b = 0)");
  }
  SumRuleReport r;
  r.jacobi_detail = hermite_rate(model.head);
  r.measure_detail = measure_side_rate(model, EquilibriumLaw::semicircle());
  r.jacobi_side = r.jacobi_detail.value;
  r.measure_side = r.measure_detail.value;
  r.gap = std::abs(signed_gap(r.jacobi_side, r.measure_side, r.measure_detail.flags));
  r.outliers = outliers(model);
  return r;
}

ProbeReport conjecture_probe(const TailJacobiModel& model, const LaguerreFamily& family) {
  const double tau = family.tau;
  if (!(tau > 0.0 && tau <= 1.0)) throw ParameterError("Laguerre probe needs tau in (0,1]");
  if (!close(model.tail_a, std::sqrt(tau), 1e-12) || !close(model.tail_b, 1.0 + tau, 1e-12)) {
    throw ParameterError("Laguerre probe needs the MP tail (a = sqrt tau, b = 1 + tau)");
  }
  model.validate();
  ProbeReport p;
  p.family = "laguerre";
  const std::size_t head = model.head_length();
  const std::size_t n = head + 20000;
  try {
    const BidiagonalFactors f = ds_factorize(model.truncation(n));
    p.coefficient_detail = laguerre_rate(f.d, f.s, tau);
    // the late terms decay like 1/k^2 at tau = 1, geometrically below
    const double last = big_G(f.d.back()) + tau * big_G(f.s.back() / std::sqrt(tau));
    p.coefficient_detail.tail_bound = static_cast<double>(n) * last;
    compress_terms(p.coefficient_detail, 2 * head + 4);
    if (tau == 1.0) {
      // sum over k > n of C / k^2 is C / n = n * last; geometric decay makes it negligible otherwise
      p.coefficient_detail.add("tail estimate", p.coefficient_detail.tail_bound);
      p.flags.emplace_back("tail-extrapolated");
    }
  } catch (const NotPositiveDefiniteError& e) {
    p.flags.emplace_back("not-positive-definite");
    p.coefficient_detail.value = kInf;
    p.coefficient_detail.flags.emplace_back(e.what());
  }
  p.coefficient_side = p.coefficient_detail.value;
  p.measure_detail = measure_side_rate(model, EquilibriumLaw::marchenko_pastur(tau));
  p.measure_side = p.measure_detail.value;
  if (tau != 1.0) {
    // variant with the divergence weighted by tau, reported alongside the literal form
    double weighted = 0.0;
    for (const RateTerm& t : p.measure_detail.terms) weighted += t.label == "kullback" ? tau * t.value : t.value;
    p.measure_detail.alternate_form = weighted;
  }
  p.outliers = outliers(model);
  p.gap = signed_gap(p.coefficient_side, p.measure_side, p.flags);
  return p;
}

EquilibriumLaw jacobi_reference_law(double kappa1, double kappa2) {
  if (!(kappa1 >= 0.0) || !(kappa2 >= 0.0)) throw ParameterError("Jacobi slopes must be >= 0");
  const double denom = 2.0 + kappa1 + kappa2;
  const auto [um, up] = u_pm((1.0 + kappa1) / denom, (1.0 + kappa1 + kappa2) / denom);
  return EquilibriumLaw::kesten_mckay(um, up);
}

TailJacobiModel jacobi_probe_model(const VerblunskyCoeffs& head, double kappa1, double kappa2) {
  if (!(kappa1 >= 0.0) || !(kappa2 >= 0.0)) throw ParameterError("Jacobi slopes must be >= 0");
  const auto [q_even, q_odd] = jacobi_kn_limits(kappa1, kappa2);
  const std::size_t rows = head.alpha.size() / 2 + 2;
  VerblunskyCoeffs ext;
  ext.alpha.resize(2 * rows + 1);
  for (std::size_t k = 0; k < ext.alpha.size(); ++k) {
    ext.alpha[k] = k < head.alpha.size() ? head.alpha[k] : (k % 2 == 0 ? q_even : q_odd);
  }
  JacobiCoeffs J = to_unit_interval(geronimus(ext, rows + 1));
  TailJacobiModel model;
  model.tail_a = 0.25 * std::sqrt((1.0 - q_odd * q_odd) * (1.0 - q_even * q_even));
  model.tail_b = 0.25 * (2.0 - 2.0 * q_odd * q_even);
  model.head.b.assign(J.b.begin(), J.b.begin() + static_cast<long>(rows));
  model.head.a.assign(J.a.begin(), J.a.begin() + static_cast<long>(rows));
  return model;
}

ProbeReport conjecture_probe(const VerblunskyCoeffs& head, const JacobiKNFamily& family) {
  ProbeReport p;
  p.family = "jacobi_kn";
  const TailJacobiModel model = jacobi_probe_model(head, family.kappa1, family.kappa2);
  const EquilibriumLaw reference = jacobi_reference_law(family.kappa1, family.kappa2);
  p.coefficient_detail = jacobi_ensemble_rate(head, family.kappa1, family.kappa2, BetaRateVariant::Corrected);
  p.coefficient_side = p.coefficient_detail.value;
  p.measure_detail = measure_side_rate(model, reference);
  p.measure_side = p.measure_detail.value;
  p.outliers = outliers(model);
  p.gap = signed_gap(p.coefficient_side, p.measure_side, p.flags);
  return p;
}

}  // namespace spectra
