#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "generators.hpp"
#include "spectra/error.hpp"
#include "spectra/quadrature.hpp"
#include "spectra/sumrule.hpp"

using namespace spectra;

namespace {

TailJacobiModel shifted(const TailJacobiModel& m) {
  TailJacobiModel s = m;
  if (!s.head.b.empty()) s.head.b.erase(s.head.b.begin());
  if (!s.head.a.empty()) s.head.a.erase(s.head.a.begin());
  return s;
}

double decomposed_moment(const TailJacobiModel& model, const MeasureDecomposition& d, int k) {
  double m = integrate_edges([&](double x) { return std::pow(x, k) * ac_density(model, x); }, d.bulk.lo, d.bulk.hi,
                             1e-12, 1e-15);
  for (const Outlier& o : d.outliers) m += o.mass * std::pow(o.location, k);
  return m;
}

std::size_t count_outside(const JacobiCoeffs& J, Interval bulk, double delta) {
  return sturm_count_below(J, bulk.lo - delta) + (J.size() - sturm_count_below(J, bulk.hi + delta));
}

}  // namespace

TEST_CASE("m-function obeys the one-row stripping identity") {
  testgen::Gen gen(17);
  for (int i = 0; i < 100; ++i) {
    TailJacobiModel model = TailJacobiModel::free_tail(gen.head());
    if (i % 2 == 1) model = TailJacobiModel::mp_tail(gen.uniform(0.2, 1.0), model.head);
    const std::complex<double> z{gen.uniform(-4.0, 5.0), gen.uniform(0.05, 2.0) * (i % 3 == 0 ? -1.0 : 1.0)};
    const std::complex<double> m = m_function(model, z);
    const std::complex<double> inner = m_function(shifted(model), z);
    const std::complex<double> rhs = 1.0 / (model.b(0) - z - model.a(0) * model.a(0) * inner);
    CHECK(std::abs(m - rhs) < 1e-12 * (1.0 + std::abs(m)));
    CHECK(m.imag() * z.imag() > 0.0);
  }
  const TailJacobiModel empty = TailJacobiModel::free_tail();
  CHECK(std::abs(m_function(empty, {0.3, 0.7}) - tail_transform(1.0, 0.0, {0.3, 0.7})) < 1e-15);
}

TEST_CASE("boundary density forms agree") {
  testgen::Gen gen(23);
  for (int i = 0; i < 20; ++i) {
    const TailJacobiModel model = TailJacobiModel::free_tail(gen.head());
    for (double theta = 0.1; theta < 3.1; theta += 0.3) {
      const double x = 2.0 * std::cos(theta);
      CHECK(ac_density_at_angle(model, theta) == doctest::Approx(ac_density(model, x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("decomposition has unit mass") {
  testgen::Gen gen(29);
  for (int i = 0; i < 60; ++i) {
    TailJacobiModel model = TailJacobiModel::free_tail(gen.head());
    if (i % 3 == 2) model = TailJacobiModel::mp_tail(gen.uniform(0.2, 1.0), model.head);
    const MeasureDecomposition d = decompose(model);
    CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(d.n_plus + d.n_minus == d.outliers.size());
  }
}

TEST_CASE("decomposition moments match a large truncation") {
  testgen::Gen gen(31);
  for (int i = 0; i < 10; ++i) {
    const TailJacobiModel model = TailJacobiModel::free_tail(gen.head());
    const MeasureDecomposition d = decompose(model);
    const DiscreteMeasure trunc = spectral_decompose(model.truncation(4000));
    const MomentVector exact = jacobi_moments(model.truncation(4000), 4000, 8);
    for (int k = 1; k <= 8; ++k) {
      const double m = decomposed_moment(model, d, k);
      CHECK(m == doctest::Approx(trunc.moment(k)).epsilon(1e-4));
      CHECK(m == doctest::Approx(exact[static_cast<std::size_t>(k)]).epsilon(1e-8));
    }
  }
}

TEST_CASE("semicircle sum rule holds on random heads") {
  testgen::Gen gen(37);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const TailJacobiModel model = TailJacobiModel::free_tail(gen.head());
    const SumRuleReport r = sumrule_verify(model);
    const double rel = r.gap / (1.0 + r.jacobi_side);
    worst = std::max(worst, rel);
    CHECK(rel < 1e-8);
  }
  MESSAGE("largest relative gap ", worst);
  CHECK_THROWS_AS(sumrule_verify(TailJacobiModel::mp_tail(0.5)), ParameterError);
}

TEST_CASE("outlier count matches the truncation") {
  testgen::Gen gen(41);
  for (int i = 0; i < 40; ++i) {
    const TailJacobiModel model = TailJacobiModel::free_tail(gen.head());
    const auto out = outliers(model);
    std::size_t clear = 0;
    for (const Outlier& o : out) {
      if (o.location > model.bulk().hi + 1e-3 || o.location < model.bulk().lo - 1e-3) ++clear;
    }
    CHECK(count_outside(model.truncation(2000), model.bulk(), 1e-3) == clear);
  }
}

TEST_CASE("outliers of one-entry perturbations") {
  for (double beta : {1.3, 2.0, -3.0}) {
    const TailJacobiModel model = TailJacobiModel::free_tail({{beta}, {}});
    const auto out = outliers(model);
    REQUIRE(out.size() == 1);
    CHECK(out[0].location == doctest::Approx(beta + 1.0 / beta).epsilon(1e-13));
    CHECK(out[0].mass == doctest::Approx(1.0 - 1.0 / (beta * beta)).epsilon(1e-12));
    CHECK(outlier_mass_numeric(model, out[0].location) == doctest::Approx(out[0].mass).epsilon(1e-6));
    const JacobiCoeffs T = model.truncation(2000);
    const double edge = beta > 0.0 ? largest_eigenvalue(T) : smallest_eigenvalue(T);
    CHECK(edge == doctest::Approx(out[0].location).epsilon(1e-10));
  }
  CHECK(outliers(TailJacobiModel::free_tail({{0.8}, {}})).empty());
  for (double alpha : {1.5, 2.0}) {
    const TailJacobiModel model = TailJacobiModel::free_tail({{}, {alpha}});
    const auto out = outliers(model);
    REQUIRE(out.size() == 2);
    const double a2 = alpha * alpha;
    const double e = a2 / std::sqrt(a2 - 1.0);
    CHECK(out[0].location == doctest::Approx(e).epsilon(1e-13));
    CHECK(out[1].location == doctest::Approx(-e).epsilon(1e-13));
    for (const Outlier& o : out) {
      CHECK(o.mass == doctest::Approx((a2 - 2.0) / (2.0 * (a2 - 1.0))).epsilon(1e-12));
      CHECK(outlier_mass_numeric(model, o.location) == doctest::Approx(o.mass).epsilon(1e-6));
    }
    CHECK(largest_eigenvalue(model.truncation(2000)) == doctest::Approx(e).epsilon(1e-10));
  }
}

TEST_CASE("m-function errors") {
  const TailJacobiModel model = TailJacobiModel::free_tail({{2.0}, {}});
  // b_0 - z - m_tail(z) vanishes at z = 2.5
  CHECK_THROWS_AS(m_function(model, {2.5, 0.0}), PoleError);
  CHECK_THROWS_AS(m_function(model, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(m_function(TailJacobiModel::free_tail({{0.0}, {-1.0}}), {3.0, 0.0}), InvalidMatrixError);
}

TEST_CASE("Laguerre conjecture probe") {
  const ProbeReport r = conjecture_probe(TailJacobiModel::mp_tail(1.0, {{1.1}, {}}), LaguerreFamily{1.0});
  CHECK(r.label == "CONJECTURE");
  CHECK(r.coefficient_side == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(r.measure_side == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(std::abs(r.gap) < 1e-7);
  CHECK(std::find(r.flags.begin(), r.flags.end(), "tail-extrapolated") != r.flags.end());

  const ProbeReport big = conjecture_probe(TailJacobiModel::mp_tail(1.0, {{5.0}, {}}), LaguerreFamily{1.0});
  REQUIRE(big.outliers.size() == 1);
  CHECK(big.outliers[0].location == doctest::Approx(16.0 / 3.0).epsilon(1e-12));
  CHECK(big.outliers[0].mass == doctest::Approx(8.0 / 9.0).epsilon(1e-10));
  CHECK(big.coefficient_side == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(big.measure_side == doctest::Approx(4.0).epsilon(1e-7));

  const ProbeReport two = conjecture_probe(TailJacobiModel::mp_tail(1.0, {{2.0, 4.0}, {1.5}}), LaguerreFamily{1.0});
  CHECK(std::abs(two.gap) < 1e-7);

  const ProbeReport npd = conjecture_probe(TailJacobiModel::mp_tail(1.0, {{0.9}, {}}), LaguerreFamily{1.0});
  CHECK(std::find(npd.flags.begin(), npd.flags.end(), "not-positive-definite") != npd.flags.end());

  // tau < 1: the tau-weighted divergence closes the identity
  testgen::Gen gen(43);
  for (int i = 0; i < 5; ++i) {
    const double tau = gen.uniform(0.2, 0.9);
    const TailJacobiModel model = TailJacobiModel::mp_tail(tau, {{1.0 + tau + gen.uniform(0.1, 2.0)}, {}});
    const ProbeReport p = conjecture_probe(model, LaguerreFamily{tau});
    REQUIRE(p.measure_detail.alternate_form.has_value());
    CHECK(*p.measure_detail.alternate_form == doctest::Approx(p.coefficient_side).epsilon(1e-10));
  }
  CHECK_THROWS_AS(conjecture_probe(TailJacobiModel::free_tail(), LaguerreFamily{1.0}), ParameterError);
}

TEST_CASE("Jacobi conjecture probe") {
  const ProbeReport r = conjecture_probe(VerblunskyCoeffs{{0.1, -0.2, 0.3}}, JacobiKNFamily{1.0, 0.5});
  CHECK(r.label == "CONJECTURE");
  CHECK(r.coefficient_side == doctest::Approx(0.148789063108).epsilon(1e-10));
  CHECK(r.measure_side == doctest::Approx(0.148789063108).epsilon(1e-10));
  CHECK(std::abs(r.gap) < 1e-10);
  const EquilibriumLaw law = jacobi_reference_law(1.0, 0.5);
  const TailJacobiModel model = jacobi_probe_model(VerblunskyCoeffs{{}}, 1.0, 0.5);
  CHECK(model.bulk().lo == doctest::Approx(law.support().lo).epsilon(1e-12));
  CHECK(model.bulk().hi == doctest::Approx(law.support().hi).epsilon(1e-12));
}
