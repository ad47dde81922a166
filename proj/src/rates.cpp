#include "spectra/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectra/error.hpp"
#include "spectra/quadrature.hpp"

namespace spectra {

void RateReport::add(std::string label, double v) {
  terms.push_back({std::move(label), v});
  value += v;
}

bool RateReport::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

EdgeCost rate_fg(double x) {
  const double ax = std::abs(x);
  if (ax < 2.0) return {0.0, false};
  // with x/2 = cosh t:  (x/2) sqrt(x^2-4) = sinh 2t  and  2 log((x + sqrt(x^2-4))/2) = 2t
  const double two_t = 2.0 * std::acosh(0.5 * ax);
  if (two_t < 0.1) {
    // sinh(y) - y without cancellation
    const double y2 = two_t * two_t;
    double term = two_t * y2 / 6.0;
    double sum = term;
    for (int k = 2; k < 12; ++k) {
      term *= y2 / static_cast<double>((2 * k) * (2 * k + 1));
      sum += term;
    }
    return {sum, true};
  }
  return {std::sinh(two_t) - two_t, true};
}

EdgeCost rate_fl(double x, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw ParameterError("rate_fl: tau must lie in (0,1]");
  const double lo = mp_lower_edge(tau);
  const double hi = mp_upper_edge(tau);
  const double width = hi - lo;
  if (x >= hi) {
    // t = hi + u^2
    auto f = [&](double u) { return 2.0 * u * u * std::sqrt(u * u + width) / (hi + u * u); };
    return {integrate(f, 0.0, std::sqrt(x - hi)), true};
  }
  if (x > 0.0 && x <= lo) {
    // t = lo - u^2 next to the edge, t = x + v next to x where 1/t peaks
    const double half = 0.5 * (lo - x);
    auto f = [&](double u) { return 2.0 * u * u * std::sqrt(u * u + width) / (lo - u * u); };
    auto g = [&](double v) {
      const double t = x + v;
      return std::sqrt((lo - t) * (hi - t)) / t;
    };
    return {integrate(f, 0.0, std::sqrt(half)) + integrate(g, 0.0, half), true};
  }
  return {0.0, false};
}

EdgeCost rate_fj(double x, double u_minus, double u_plus) {
  if (!(u_minus >= 0.0 && u_minus < u_plus && u_plus <= 1.0))
    throw ParameterError("rate_fj: need 0 <= u_minus < u_plus <= 1");
  const double width = u_plus - u_minus;
  auto density = [&](double t, double one_minus_t) {
    return std::sqrt((t - u_minus) * (t - u_plus)) / (t * one_minus_t);
  };
  // the half next to the band edge uses t = edge +- w^2; the half next to x is
  // parametrized from x so that t and 1 - t keep full relative accuracy
  if (x >= u_plus && x < 1.0) {
    const double half = 0.5 * (x - u_plus);
    auto edge_half = [&](double w) {
      const double t = u_plus + w * w;
      return 2.0 * w * w * std::sqrt(w * w + width) / (t * (1.0 - t));
    };
    auto far_half = [&](double v) { return density(x - v, (1.0 - x) + v); };
    return {integrate(edge_half, 0.0, std::sqrt(half)) + integrate(far_half, 0.0, half), true};
  }
  if (x > 0.0 && x <= u_minus) {
    const double half = 0.5 * (u_minus - x);
    auto edge_half = [&](double w) {
      const double t = u_minus - w * w;
      return 2.0 * w * w * std::sqrt(w * w + width) / (t * (1.0 - t));
    };
    auto far_half = [&](double v) { return density(x + v, (1.0 - x) - v); };
    return {integrate(edge_half, 0.0, std::sqrt(half)) + integrate(far_half, 0.0, half), true};
  }
  return {0.0, false};
}

double small_g(double x) {
  if (!(x > 0.0)) return kInf;
  return x - 1.0 - std::log(x);
}

double big_G(double x) {
  if (!(x > 0.0)) return kInf;
  return small_g(x * x);
}

double beta_h(double u, double v, double q, BetaRateVariant variant) {
  if (!(u > 0.0) || !(v > 0.0)) throw ParameterError("beta_h: u and v must be > 0");
  if (!(q > -1.0 && q < 1.0)) return kInf;
  if (variant == BetaRateVariant::Literal) {
    return q * (u - v) - u * std::log1p(q) - v * std::log1p(-q);
  }
  const double s = u + v;
  const double value =
      u * std::log(u) + v * std::log(v) - s * std::log(0.5 * s) - u * std::log1p(-q) - v * std::log1p(q);
  return std::max(value, 0.0);
}

RateReport hermite_rate(const JacobiCoeffs& J, std::optional<std::size_t> order) {
  RateReport report;
  const std::size_t nb = order ? std::min(*order, J.b.size()) : J.b.size();
  const std::size_t na = order ? std::min(*order > 0 ? *order - 1 : 0, J.a.size()) : J.a.size();
  for (std::size_t j = 0; j < nb; ++j) {
    report.add("b_" + std::to_string(j) + "^2/2", 0.5 * J.b[j] * J.b[j]);
  }
  for (std::size_t j = 0; j < na; ++j) {
    const double g = big_G(J.a[j]);
    report.add("G(a_" + std::to_string(j) + ")", g);
    if (std::isinf(g)) report.flags.emplace_back("nonpositive-offdiagonal");
  }
  report.truncation = nb;
  double omitted = 0.0;
  for (std::size_t j = nb; j < J.b.size(); ++j) omitted += 0.5 * J.b[j] * J.b[j];
  for (std::size_t j = na; j < J.a.size(); ++j) omitted += big_G(J.a[j]);
  report.tail_bound = omitted;
  if (omitted > 0.0) report.flags.emplace_back("truncated");
  return report;
}

RateReport laguerre_rate(std::span<const double> d, std::span<const double> s, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw ParameterError("laguerre_rate: tau must lie in (0,1]");
  RateReport report;
  const double rt = std::sqrt(tau);
  for (std::size_t k = 0; k < d.size(); ++k) {
    report.add("G(d_" + std::to_string(k + 1) + ")", big_G(d[k]));
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    report.add("tau G(s_" + std::to_string(k + 1) + "/sqrt tau)", tau * big_G(s[k] / rt));
  }
  report.truncation = std::max(d.size(), s.size());
  if (std::isinf(report.value)) report.flags.emplace_back("nonpositive-entry");

  if (tau == 1.0 && std::isfinite(report.value)) {
    const std::size_t n = std::max(d.size(), s.size());
    auto dk = [&](std::size_t k) { return k <= d.size() ? d[k - 1] : 1.0; };  // 1-based
    auto sk = [&](std::size_t k) { return k <= s.size() ? s[k - 1] : 1.0; };
    double form = 0.0;
    if (n > 0) {
      form = dk(1) * dk(1) - 1.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double bk = sk(k) * sk(k) + dk(k + 1) * dk(k + 1);
        form += bk - 2.0;
      }
      for (std::size_t k = 0; k < n; ++k) form -= 2.0 * std::log(sk(k + 1) * dk(k + 1));
    }
    report.alternate_form = form;
    if (std::abs(form - report.value) > 1e-10 * (1.0 + std::abs(report.value))) {
      report.flags.emplace_back("jacobi-form-mismatch");
    }
  }
  return report;
}

RateReport jacobi_ensemble_rate(const VerblunskyCoeffs& alpha, double kappa1, double kappa2,
                                BetaRateVariant variant) {
  if (!(kappa1 >= 0.0) || !(kappa2 >= 0.0)) throw ParameterError("jacobi_ensemble_rate: slopes must be >= 0");
  RateReport report;
  for (std::size_t k = 0; k < alpha.alpha.size(); ++k) {
    const double q = alpha.alpha[k];
    double u = 0.0;
    double v = 0.0;
    if (k % 2 == 0) {
      if (variant == BetaRateVariant::Literal) {
        u = 1.0 + kappa1;
        v = 1.0 + kappa2;
      } else {
        u = 1.0 + kappa2;
        v = 1.0 + kappa1;
      }
    } else {
      u = 1.0 + kappa1 + kappa2;
      v = 1.0;
    }
    const double h = beta_h(u, v, q, variant);
    report.add("h(alpha_" + std::to_string(k) + ")", h);
    if (std::isinf(h)) report.flags.emplace_back("alpha-out-of-range");
  }
  report.truncation = alpha.alpha.size();
  if (kappa1 == 0.0 && kappa2 == 0.0) report.flags.emplace_back("szego-case");
  return report;
}

double kullback_angular(const EquilibriumLaw& reference, const std::function<double(const EdgePoint&)>& q_at) {
  const double r = reference.support().radius();
  bool singular = false;
  auto f = [&](const EdgePoint& pt) {
    const double p = reference.density_at(pt);
    if (p <= 0.0) return 0.0;
    const double q = q_at(pt);
    if (!(q > 0.0) || !std::isfinite(q)) {
      singular = true;
      return 0.0;
    }
    return p * std::log(p / q) * r * pt.sine;
  };
  // theta = pi sin^2(pi w / 2) flattens logarithmic edge singularities; the
  // upper half runs through pi - theta so points near pi stay exact
  constexpr double pi = std::numbers::pi;
  auto angle = [](double w) { return pi * std::pow(std::sin(0.5 * pi * w), 2); };
  auto jacobian = [](double w) { return 0.5 * pi * pi * std::sin(pi * w); };
  const double left = integrate([&](double w) { return f(EdgePoint::from_angle(angle(w))) * jacobian(w); }, 0.0, 0.5,
                                1e-13, 1e-15);
  const double right = integrate([&](double w) { return f(EdgePoint::from_complement(angle(w))) * jacobian(w); }, 0.0,
                                 0.5, 1e-13, 1e-15);
  if (singular) return kInf;
  return left + right;
}

double kullback(const EquilibriumLaw& reference, const RealFunction& q_density) {
  const Interval s = reference.support();
  return kullback_angular(reference, [&](const EdgePoint& p) { return q_density(p.on(s)); });
}

double kullback_grid(std::span<const double> p, std::span<const double> q, std::span<const double> w) {
  if (p.size() != q.size() || p.size() != w.size()) throw ParameterError("kullback_grid: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (!(q[i] > 0.0)) return kInf;
    sum += w[i] * p[i] * std::log(p[i] / q[i]);
  }
  return sum;
}

}  // namespace spectra
