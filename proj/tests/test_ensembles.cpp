#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "spectra/ensembles.hpp"
#include "spectra/error.hpp"
#include "spectra/stats.hpp"

using namespace spectra;

namespace {

EnsembleSpec hermite(std::size_t n, double beta = 2.0) {
  EnsembleSpec s;
  s.kind = EnsembleKind::Hermite;
  s.n = n;
  s.beta = beta;
  return s;
}

EnsembleSpec laguerre(std::size_t n, double tau, double beta = 2.0) {
  EnsembleSpec s;
  s.kind = EnsembleKind::Laguerre;
  s.n = n;
  s.tau = tau;
  s.beta = beta;
  return s;
}

EnsembleSpec jacobi_slopes(std::size_t n, double k1, double k2, double beta = 2.0) {
  EnsembleSpec s;
  s.kind = EnsembleKind::JacobiKN;
  s.n = n;
  s.beta = beta;
  s.kappa1 = k1;
  s.kappa2 = k2;
  return s;
}

double median(std::vector<double> v) {
  std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
  return v[v.size() / 2];
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

}  // namespace

TEST_CASE("samples are reproducible per (seed, index)") {
  for (const auto& spec : {hermite(12), laguerre(12, 0.5), jacobi_slopes(12, 1.0, 0.5)}) {
    auto r1 = sample_stream(7, spec, 3);
    auto r2 = sample_stream(7, spec, 3);
    auto r3 = sample_stream(7, spec, 4);
    const JacobiCoeffs a = sample_jacobi_matrix(spec, r1);
    const JacobiCoeffs b = sample_jacobi_matrix(spec, r2);
    const JacobiCoeffs c = sample_jacobi_matrix(spec, r3);
    CHECK(a.b == b.b);
    CHECK(a.a == b.a);
    CHECK(a.b != c.b);
  }
  CHECK(sample_stream_id(EnsembleKind::Hermite, 10, 0) != sample_stream_id(EnsembleKind::Hermite, 11, 0));
  CHECK(sample_stream_id(EnsembleKind::Hermite, 10, 0) != sample_stream_id(EnsembleKind::Laguerre, 10, 0));
}

TEST_CASE("primitive laws have the stated means") {
  RngStream rng(11, 0);
  const int draws = 200000;
  double g = 0.0, g2 = 0.0, gam = 0.0, bs = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = sample_primitive(GaussDist{0.5}, rng)[0];
    g += x;
    g2 += x * x;
    gam += sample_primitive(GammaDist{2.5, 0.4}, rng)[0];
    const double y = sample_primitive(BetaSymDist{2.0, 3.0}, rng)[0];
    CHECK_FALSE((y <= -1.0 || y > 1.0));
    bs += y;
  }
  const double sd = 1.0 / std::sqrt(draws);
  CHECK(std::abs(g / draws) < 5.0 * std::sqrt(0.5) * sd);
  CHECK(std::abs(g2 / draws - 0.5) < 5.0 * std::sqrt(2.0 * 0.25) * sd);
  CHECK(std::abs(gam / draws - 1.0) < 5.0 * std::sqrt(2.5 * 0.16) * sd);
  // beta_s(2,3) = 2 Beta(3,2) - 1: mean 0.2, variance 4 * 6 / (25 * 6) = 0.16
  CHECK(std::abs(bs / draws - 0.2) < 5.0 * 0.4 * sd);
  const auto w = sample_primitive(DirichletDist{{1.0, 2.0, 3.0}}, rng);
  CHECK(w.size() == 3);
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Hermite off-diagonal squares have mean (N-1-j)/N") {
  const std::size_t n = 8;
  const auto spec = hermite(n, 2.0);
  const int draws = 100000;
  std::vector<double> sum_a2(n - 1, 0.0), sum_b(n, 0.0), sum_b2(n, 0.0);
  for (int i = 0; i < draws; ++i) {
    auto rng = sample_stream(42, spec, static_cast<std::uint64_t>(i));
    const auto J = sample_hermite(spec, rng);
    for (std::size_t j = 0; j + 1 < n; ++j) sum_a2[j] += J.a[j] * J.a[j];
    for (std::size_t j = 0; j < n; ++j) {
      sum_b[j] += J.b[j];
      sum_b2[j] += J.b[j] * J.b[j];
    }
  }
  const double bn = spec.beta_prime() * static_cast<double>(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double expected = static_cast<double>(n - 1 - j) / static_cast<double>(n);
    // Gamma(beta'(N-1-j), 1/(beta' N)) has variance expected / (beta' N)
    const double sigma = std::sqrt(expected / bn / draws);
    CHECK(std::abs(sum_a2[j] / draws - expected) < 5.0 * sigma);
  }
  for (std::size_t j = 0; j < n; ++j) {
    CHECK(std::abs(sum_b[j] / draws) < 5.0 * std::sqrt(1.0 / bn / draws));
    CHECK(std::abs(sum_b2[j] / draws - 1.0 / bn) < 5.0 * std::sqrt(2.0 / (bn * bn) / draws));
  }
}

TEST_CASE("largest eigenvalue is uncorrelated with its spectral weight") {
  const auto spec = hermite(10);
  const int draws = 10000;
  std::vector<double> lmax(draws), w(draws);
  for (int i = 0; i < draws; ++i) {
    auto rng = sample_stream(5, spec, static_cast<std::uint64_t>(i));
    DiscreteMeasure mu = spectral_measure(sample_hermite(spec, rng));
    mu.sort_by_location();
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    lmax[static_cast<std::size_t>(i)] = mu.atoms.back().location;
    w[static_cast<std::size_t>(i)] = mu.atoms.back().weight;
  }
  CHECK(std::abs(pearson(lmax, w)) < 5.0 / std::sqrt(draws));
  // Dirichlet(beta', ..., beta') weights have mean 1/N
  CHECK(std::abs(mean(w) - 0.1) < 0.005);
}

TEST_CASE("Laguerre matrices are positive semidefinite") {
  for (double tau : {0.25, 0.5, 1.0}) {
    const auto spec = laguerre(30, tau);
    for (int i = 0; i < 200; ++i) {
      auto rng = sample_stream(9, spec, static_cast<std::uint64_t>(i));
      const auto s = sample_laguerre(spec, rng);
      CHECK(s.jacobi.size() == spec.laguerre_m());
      CHECK(smallest_eigenvalue(s.jacobi) >= -1e-12);
      for (double d : s.factors.d) CHECK(d > 0.0);
    }
  }
}

TEST_CASE("Jacobi model coefficients stay in range") {
  for (const auto& spec : {jacobi_slopes(20, 1.0, 0.5), jacobi_slopes(20, 0.0, 0.0)}) {
    for (int i = 0; i < 200; ++i) {
      auto rng = sample_stream(13, spec, static_cast<std::uint64_t>(i));
      const auto s = sample_jacobi_kn(spec, rng);
      CHECK(s.alpha.alpha.size() == 2 * spec.n - 1);
      for (double al : s.alpha.alpha) CHECK(std::abs(al) <= 1.0);
      for (std::size_t k = 0; k + 1 < spec.n; ++k) CHECK(s.alpha.alpha[k] > -1.0);
      for (double a : s.jacobi.a) CHECK(a > 0.0);
    }
  }
  EnsembleSpec unit = jacobi_slopes(20, 1.0, 0.5);
  unit.unit_interval = true;
  auto rng = sample_stream(1, unit, 0);
  const auto J = sample_jacobi_kn(unit, rng).jacobi;
  CHECK(smallest_eigenvalue(J) >= -1e-12);
  CHECK(largest_eigenvalue(J) <= 1.0 + 1e-12);
}

TEST_CASE("medians approach the almost-sure limits") {
  const int draws = 201;
  std::vector<double> err_h, err_l, err_even, err_odd;
  const double k1 = 1.0, k2 = 0.5;
  const auto [even_lim, odd_lim] = jacobi_kn_limits(k1, k2);
  for (std::size_t n : {100u, 1000u, 10000u}) {
    std::vector<double> a0(draws), d0(draws), s0(draws), al0(draws), al1(draws);
    const auto sh = hermite(n);
    const auto sl = laguerre(n, 0.5);
    const auto sj = jacobi_slopes(n, k1, k2);
    for (int i = 0; i < draws; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      auto rh = sample_stream(21, sh, idx);
      a0[idx] = sample_hermite(sh, rh).a[0];
      auto rl = sample_stream(21, sl, idx);
      const auto lag = sample_laguerre(sl, rl);
      d0[idx] = lag.factors.d[0];
      s0[idx] = lag.factors.s[0];
      auto rj = sample_stream(21, sj, idx);
      const auto kn = sample_jacobi_kn(sj, rj);
      al0[idx] = kn.alpha.alpha[0];
      al1[idx] = kn.alpha.alpha[1];
    }
    const double bound = 5.0 / std::sqrt(static_cast<double>(n));
    err_h.push_back(std::abs(median(a0) - 1.0));
    err_l.push_back(std::max(std::abs(median(d0) - 1.0), std::abs(median(s0) - std::sqrt(0.5))));
    const double med_even = median(al0);
    std::printf("N=%zu even Verblunsky median %+.6f (limit magnitude %.6f)\n", n, med_even, std::abs(even_lim));
    err_even.push_back(std::abs(std::abs(med_even) - std::abs(even_lim)));
    err_odd.push_back(std::abs(median(al1) - odd_lim));
    CHECK(err_h.back() < bound);
    CHECK(err_l.back() < bound);
    CHECK(err_even.back() < bound);
    CHECK(err_odd.back() < bound);
  }
  CHECK(err_h.back() < err_h.front());
  CHECK(err_l.back() < err_l.front());
  CHECK(err_even.back() < err_even.front());
  CHECK(err_odd.back() < err_odd.front());
}

TEST_CASE("ensemble validation") {
  CHECK_THROWS_AS(hermite(0).validate(), ParameterError);
  CHECK_THROWS_AS(hermite(5, 0.0).validate(), ParameterError);
  CHECK_THROWS_AS(laguerre(5, 1.5).validate(), ParameterError);
  EnsembleSpec j;
  j.kind = EnsembleKind::JacobiKN;
  j.n = 5;
  j.a = -1.0;
  CHECK_THROWS_AS(j.validate(), ParameterError);
  j.a = 0.0;
  j.b = -1.5;
  CHECK_THROWS_AS(j.validate(), ParameterError);
  j.b = 0.0;
  j.kappa1 = 1.0;
  CHECK_THROWS_AS(j.validate(), ParameterError);
  EnsembleSpec m = laguerre(5, 0.5);
  m.m = 6;
  CHECK_THROWS_AS(m.validate(), ParameterError);
  CHECK(ensemble_kind_from_string("laguerre") == EnsembleKind::Laguerre);
  CHECK_THROWS_AS(ensemble_kind_from_string("wishart"), ParameterError);
  auto rng = sample_stream(1, j, 0);
  CHECK_THROWS_AS(sample_hermite(j, rng), ParameterError);
}

TEST_CASE("empirical spectral distribution has equal masses") {
  const auto spec = hermite(50);
  auto rng = sample_stream(3, spec, 0);
  const auto mu = esd(sample_hermite(spec, rng));
  CHECK(mu.size() == 50);
  for (const auto& at : mu.atoms) CHECK(at.weight == doctest::Approx(0.02));
  // second moment of the ESD is trace(J^2)/N, close to 1 for N = 50
  CHECK(mu.moment(2) == doctest::Approx(1.0).epsilon(0.15));
}
