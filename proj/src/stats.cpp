#include "spectra/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <optional>

#include "spectra/error.hpp"

namespace spectra {

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw ParameterError("KS statistic of an empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  if (n == 0) throw ParameterError("KS p-value needs n >= 1");
  const double rn = std::sqrt(static_cast<double>(n));
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("pearson needs two samples of equal size >= 2");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double correlation_pvalue(double r, std::size_t n) {
  if (n < 4) return 1.0;
  const double z = std::atanh(std::clamp(r, -1.0 + 1e-16, 1.0 - 1e-16)) * std::sqrt(static_cast<double>(n - 3));
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

bool StatReport::all_passed() const {
  return std::all_of(tests.begin(), tests.end(), [](const StatTest& t) { return t.passed; });
}

namespace {

StatTest mean_test(std::string name, std::span<const double> values, double expected, double alpha) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= (n - 1.0);
  StatTest t;
  t.name = std::move(name);
  t.statistic = (mean - expected) / std::sqrt(var / n);
  t.p_value = std::erfc(std::abs(t.statistic) / std::sqrt(2.0));
  t.passed = t.p_value >= alpha;
  return t;
}

}  // namespace

StatReport stat_suite(const EnsembleSpec& spec, std::uint64_t seed, std::size_t samples, double alpha) {
  spec.validate();
  if (samples < 10) throw ParameterError("stat suite needs at least 10 samples");
  StatReport report;
  report.spec = spec;
  report.seed = seed;
  report.samples = samples;
  report.alpha = alpha;

  std::vector<double> top_weight, top_value, m1, m2;
  top_weight.reserve(samples);
  top_value.reserve(samples);
  std::size_t size = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    RngStream rng = sample_stream(seed, spec, i);
    const JacobiCoeffs J = sample_jacobi_matrix(spec, rng);
    size = J.size();
    DiscreteMeasure mu = spectral_decompose(J);
    const auto top = std::max_element(mu.atoms.begin(), mu.atoms.end(),
                                      [](const Atom& x, const Atom& y) { return x.location < y.location; });
    top_weight.push_back(top->weight);
    top_value.push_back(top->location);
    m1.push_back(J.b[0]);
    m2.push_back(J.b[0] * J.b[0] + (J.size() > 1 ? J.a[0] * J.a[0] : 0.0));
  }

  const double bp = spec.beta_prime();
  const double rest = static_cast<double>(size - 1) * bp;
  auto beta_cdf = [](double p, double q) {
    return [p, q](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : boost::math::ibeta(p, q, x)); };
  };

  if (size > 1) {
    StatTest ks;
    ks.name = "ks_weight_beta";
    ks.statistic = ks_statistic(top_weight, beta_cdf(bp, rest));
    ks.p_value = ks_pvalue(ks.statistic, samples);
    ks.passed = ks.p_value >= alpha;
    report.tests.push_back(ks);

    StatTest corr;
    corr.name = "corr_lambda_max_weight";
    corr.statistic = pearson(top_value, top_weight);
    corr.p_value = correlation_pvalue(corr.statistic, samples);
    corr.passed = corr.p_value >= alpha;
    report.tests.push_back(corr);
  }

  const double N = static_cast<double>(spec.n);
  std::optional<double> e1, e2;
  if (spec.kind == EnsembleKind::Hermite) {
    e1 = 0.0;
    e2 = 1.0 / (bp * N) + (N - 1.0) / N;
  } else if (spec.kind == EnsembleKind::Laguerre) {
    const double m = static_cast<double>(spec.laguerre_m());
    e1 = 1.0;
    e2 = 1.0 + 1.0 / (bp * N) + (m > 1.0 ? (m - 1.0) / N : 0.0);
  }
  if (e1) report.tests.push_back(mean_test("mean_m1", m1, *e1, alpha));
  if (e2 && size > 1) report.tests.push_back(mean_test("mean_m2", m2, *e2, alpha));

  if (size > 1) {
    StatTest control;
    control.name = "ks_negative_control";
    control.negative_control = true;
    control.statistic = ks_statistic(top_weight, beta_cdf(2.0 * bp, rest));
    control.p_value = ks_pvalue(control.statistic, samples);
    control.passed = control.p_value < alpha;
    report.tests.push_back(control);
  }
  return report;
}

}  // namespace spectra
