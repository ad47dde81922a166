#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "spectra/jacobi.hpp"

using namespace spectra;

namespace {

Eigen::MatrixXd dense(const JacobiCoeffs& J) {
  const auto n = static_cast<Eigen::Index>(J.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    M(i, i) = J.b[static_cast<std::size_t>(i)];
    if (i + 1 < n) M(i, i + 1) = M(i + 1, i) = J.a[static_cast<std::size_t>(i)];
  }
  return M;
}

}  // namespace

TEST_CASE("spectral_decompose small cases") {
  DiscreteMeasure one = spectral_decompose(JacobiCoeffs{{0.7}, {}});
  REQUIRE(one.size() == 1);
  CHECK(one.atoms[0].location == 0.7);
  CHECK(one.atoms[0].weight == 1.0);

  DiscreteMeasure two = spectral_decompose(JacobiCoeffs{{0.0, 0.0}, {1.0}});
  REQUIRE(two.size() == 2);
  CHECK(two.atoms[0].location == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(two.atoms[1].location == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.atoms[0].weight == doctest::Approx(0.5).epsilon(1e-15));

  DiscreteMeasure three = spectral_decompose(JacobiCoeffs{{0.0, 0.0, 0.0}, {std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0)}});
  REQUIRE(three.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(three.atoms[i].location == doctest::Approx(static_cast<double>(i) - 1.0).epsilon(1e-14));
    CHECK(three.atoms[i].weight == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(spectral_decompose(JacobiCoeffs{{0.0, 0.0}, {0.0}}), InvalidMatrixError);
  CHECK_THROWS_AS(spectral_decompose(JacobiCoeffs{{0.0, 0.0}, {-1.0}}), InvalidMatrixError);
}

TEST_CASE("spectral_decompose agrees with a dense eigensolver") {
  testgen::Gen gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    const JacobiCoeffs J = gen.jacobi(gen.index(2, 25), 3.0, 0.1, 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(J));
    DiscreteMeasure mu = spectral_decompose(J);
    mu.sort_by_location();
    for (std::size_t k = 0; k < J.size(); ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      CHECK(std::abs(mu.atoms[k].location - es.eigenvalues()(kk)) < 1e-12);
      const double w = es.eigenvectors()(0, kk) * es.eigenvectors()(0, kk);
      CHECK(std::abs(mu.atoms[k].weight - w) < 1e-12);
    }
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("Sturm counts and bisection") {
  testgen::Gen gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const JacobiCoeffs J = gen.jacobi(gen.index(1, 30));
    const std::vector<double> ev = tridiagonal_eigenvalues(J);
    CHECK(std::is_sorted(ev.begin(), ev.end()));
    for (std::size_t k = 0; k < ev.size(); ++k) {
      CHECK(std::abs(sturm_eigenvalue(J, k) - ev[k]) < 1e-12);
      CHECK(sturm_count_below(J, ev[k] - 1e-9) == k);
    }
    CHECK(std::abs(largest_eigenvalue(J) - ev.back()) < 1e-12);
    CHECK(std::abs(smallest_eigenvalue(J) - ev.front()) < 1e-12);
    const Interval g = gershgorin_bounds(J);
    CHECK(g.lo <= ev.front());
    CHECK(g.hi >= ev.back());
  }
}

TEST_CASE("measure_to_jacobi golden cases") {
  const JacobiCoeffs d = measure_to_jacobi(DiscreteMeasure{{{0.3, 1.0}}});
  CHECK(d.b == std::vector<double>{0.3});
  CHECK(d.a.empty());

  const JacobiCoeffs u3 = measure_to_jacobi(DiscreteMeasure{{{-1.0, 1.0 / 3}, {0.0, 1.0 / 3}, {1.0, 1.0 / 3}}});
  REQUIRE(u3.size() == 3);
  for (double b : u3.b) CHECK(std::abs(b) < 1e-15);
  CHECK(u3.a[0] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(u3.a[1] == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));

  const JacobiCoeffs u2 = measure_to_jacobi(DiscreteMeasure{{{-1.0, 0.5}, {1.0, 0.5}}});
  CHECK(std::abs(u2.b[0]) < 1e-15);
  CHECK(u2.a[0] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(measure_to_jacobi(DiscreteMeasure{{{0.5, 0.5}, {0.5, 0.5}}}), DegenerateMeasureError);
}

TEST_CASE("measure round trip through the Jacobi matrix") {
  testgen::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    DiscreteMeasure mu = gen.measure(gen.index(1, 30), -5.0, 5.0);
    const JacobiCoeffs J = measure_to_jacobi(mu);
    DiscreteMeasure back = spectral_decompose(J);
    back.sort_by_location();
    REQUIRE(back.size() == mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) {
      CHECK(std::abs(back.atoms[k].location - mu.atoms[k].location) < 1e-8);
      CHECK(std::abs(back.atoms[k].weight - mu.atoms[k].weight) < 1e-8);
    }
  }
}

TEST_CASE("Gauss-Chebyshev nodes of the arcsine law give the Verblunsky-zero matrix") {
  // the n-point Gauss rule of a measure reproduces its first n recurrence coefficients
  const ChebGrid g = make_cheb_grid(ChebKind::FirstKind, 40, {-2.0, 2.0});
  DiscreteMeasure mu;
  for (std::size_t i = 0; i < g.size(); ++i) mu.atoms.push_back({g.nodes[i], g.weights[i] / g.total_weight()});
  const JacobiCoeffs J = measure_to_jacobi(mu);
  const JacobiCoeffs G = geronimus(VerblunskyCoeffs{std::vector<double>(79, 0.0)}, 40);
  for (std::size_t k = 0; k < 39; ++k) {
    CHECK(std::abs(J.b[k] - G.b[k]) < 1e-10);
    CHECK(std::abs(J.a[k] - G.a[k]) < 1e-10);
  }
}

TEST_CASE("moments from powers of J match the spectral measure") {
  testgen::Gen gen(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = gen.index(1, 12);
    const JacobiCoeffs J = gen.jacobi(n);
    const MomentVector m = jacobi_moments(J, n, 2 * n - 1);
    const DiscreteMeasure mu = spectral_decompose(J);
    for (std::size_t r = 1; r <= 2 * n - 1; ++r) {
      const double quad = mu.moment(static_cast<int>(r));
      CHECK(std::abs(m[r] - quad) < 1e-9 * (1.0 + std::abs(quad)));
    }
  }
}

TEST_CASE("section identity: low moments do not see deeper rows") {
  testgen::Gen gen(13);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t jp = gen.index(3, 16);
    const std::size_t j = gen.index(1, jp - 1);
    const JacobiCoeffs J = gen.jacobi(jp);
    const MomentVector small = jacobi_moments(J, j, 2 * j - 1);
    const MomentVector big = jacobi_moments(J, jp, 2 * j - 1);
    for (std::size_t r = 1; r <= 2 * j - 1; ++r) CHECK(std::abs(small[r] - big[r]) < 1e-12 * (1.0 + std::abs(big[r])));
  }
  CHECK_THROWS_AS(jacobi_moments(JacobiCoeffs{{0.0, 0.0}, {1.0}}, 2, 4), RangeError);
  CHECK_NOTHROW(jacobi_moments(JacobiCoeffs{{0.0, 0.0}, {1.0}}, 2, 3));
  CHECK(jacobi_moments(JacobiCoeffs{{0.4}, {}}, 1, 1)[1] == 0.4);
}

TEST_CASE("free matrix moments are Catalan numbers in integer arithmetic") {
  const std::vector<long long> b(8, 0), a(7, 1);
  const auto m = jacobi_moments_generic<long long>(b, a, 8, 15);
  const std::vector<long long> expected{0, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132, 0, 429, 0};
  CHECK(m == expected);
  const auto m4 = jacobi_moments_generic<long long>(std::span(b).first(4), std::span(a).first(3), 4, 6);
  CHECK(m4 == std::vector<long long>{0, 1, 0, 2, 0, 5});
}

TEST_CASE("Geronimus relations") {
  const JacobiCoeffs zero = geronimus(VerblunskyCoeffs{std::vector<double>(9, 0.0)}, 5);
  for (double b : zero.b) CHECK(std::abs(b) < 1e-15);
  CHECK(std::abs(zero.a[0] - std::sqrt(2.0)) < 1e-12);
  for (std::size_t k = 1; k < zero.a.size(); ++k) CHECK(std::abs(zero.a[k] - 1.0) < 1e-12);

  const JacobiCoeffs half = geronimus(VerblunskyCoeffs{{0.5, 0.0, 0.0}}, 2);
  CHECK(half.b[0] == doctest::Approx(1.0).epsilon(1e-15));
  // (1 - alpha_{-1}) = 2 enters the first off-diagonal entry
  CHECK(half.a[0] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));

  CHECK_THROWS_AS(geronimus(VerblunskyCoeffs{{0.2, 1.0, 0.0}}, 2), RangeError);
  CHECK_THROWS_AS(geronimus(VerblunskyCoeffs{{-1.0, 0.0, 0.0}}, 2), RangeError);

  testgen::Gen gen(14);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = gen.index(1, 10);
    const JacobiCoeffs J = geronimus(VerblunskyCoeffs{gen.uniforms(2 * n - 1, -0.999, 0.999)}, n);
    for (double a : J.a) CHECK(a > 0.0);
  }
  // a_0 -> 0 monotonically as alpha_1 -> -1
  double prev = 10.0;
  for (double alpha1 = 0.0; alpha1 > -1.0; alpha1 = -1.0 + 0.5 * (1.0 + alpha1)) {
    const double a0 = geronimus(VerblunskyCoeffs{{0.3, alpha1, 0.2}}, 2).a[0];
    CHECK(a0 < prev);
    prev = a0;
    if (alpha1 < -1.0 + 1e-12) break;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("affine maps between [0,1] and [-2,2]") {
  CHECK(affine_r(0.5) == 0.0);
  CHECK(affine_s(0.0) == 0.5);
  CHECK(affine_r(0.0) == -2.0);
  CHECK(affine_r(1.0) == 2.0);
  CHECK(affine_r_extrapolates(1.2));
  CHECK_FALSE(affine_s_extrapolates(1.9));
  testgen::Gen gen(15);
  const JacobiCoeffs J = gen.jacobi(9);
  DiscreteMeasure direct = spectral_decompose(to_unit_interval(J));
  DiscreteMeasure pushed = pushforward_s(spectral_decompose(J));
  direct.sort_by_location();
  pushed.sort_by_location();
  for (std::size_t k = 0; k < 9; ++k) {
    CHECK(std::abs(direct.atoms[k].location - pushed.atoms[k].location) < 1e-13);
    CHECK(std::abs(direct.atoms[k].weight - pushed.atoms[k].weight) < 1e-12);
  }
  const DiscreteMeasure round = pushforward_r(pushforward_s(DiscreteMeasure{{{1.5, 1.0}}}));
  CHECK(round.atoms[0].location == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("bidiagonal factorization") {
  const BidiagonalFactors one = ds_factorize(JacobiCoeffs{{4.0}, {}});
  CHECK(one.d == std::vector<double>{2.0});
  const BidiagonalFactors two = ds_factorize(JacobiCoeffs{{1.0, 2.0}, {1.0}});
  CHECK(two.d[0] == doctest::Approx(1.0));
  CHECK(two.s[0] == doctest::Approx(1.0));
  CHECK(two.d[1] == doctest::Approx(1.0));

  const double tau = 0.37;
  JacobiCoeffs mp;
  mp.b.push_back(1.0);
  for (int k = 1; k < 10; ++k) mp.b.push_back(1.0 + tau);
  mp.a.assign(9, std::sqrt(tau));
  const BidiagonalFactors f = ds_factorize(mp);
  for (double d : f.d) CHECK(std::abs(d - 1.0) < 1e-14);
  for (double s : f.s) CHECK(std::abs(s - std::sqrt(tau)) < 1e-14);

  CHECK_THROWS_AS(ds_factorize(JacobiCoeffs{{1.0, 0.5}, {1.0}}), NotPositiveDefiniteError);

  testgen::Gen gen(16);
  for (int trial = 0; trial < 50; ++trial) {
    BidiagonalFactors r;
    const std::size_t n = gen.index(1, 15);
    r.d = gen.uniforms(n, 0.2, 2.0);
    r.s = gen.uniforms(n - 1, 0.2, 2.0);
    const JacobiCoeffs J = assemble_bidiagonal(r);
    const JacobiCoeffs back = assemble_bidiagonal(ds_factorize(J));
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(back.b[k] - J.b[k]) < 1e-12 * (1.0 + J.b[k]));
    for (std::size_t k = 0; k + 1 < n; ++k) CHECK(std::abs(back.a[k] - J.a[k]) < 1e-12 * (1.0 + J.a[k]));
  }
}

TEST_CASE("discrete measure validation") {
  CHECK_NOTHROW(DiscreteMeasure{{{0.0, 0.5}, {1.0, 0.5}}}.validate());
  CHECK_THROWS(DiscreteMeasure{{{0.0, 0.5}, {1.0, 0.6}}}.validate());
  CHECK_THROWS(DiscreteMeasure{{{0.0, -0.5}, {1.0, 1.5}}}.validate());
  CHECK_THROWS(DiscreteMeasure{{{0.0, 0.5}, {0.0, 0.5}}}.validate());
  CHECK_THROWS_AS(JacobiCoeffs({1.0}, {}).section(2), RangeError);
}
