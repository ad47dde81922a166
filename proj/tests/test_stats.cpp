#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "spectra/stats.hpp"

using namespace spectra;

namespace {

const StatTest* find_test(const StatReport& r, const std::string& name) {
  for (const auto& t : r.tests) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("KS statistic and p-value") {
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back((i + 0.5) / 100.0);
  CHECK(ks_statistic(grid, [](double x) { return x; }) == doctest::Approx(0.005).epsilon(1e-12));
  // all points at one end
  CHECK(ks_statistic(std::vector<double>(50, 0.1), [](double x) { return x; }) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(ks_pvalue(0.0, 100) == doctest::Approx(1.0));
  CHECK(ks_pvalue(0.5, 100) < 1e-10);
  CHECK(ks_pvalue(0.05, 100) > ks_pvalue(0.1, 100));
  // the 5% critical value is about 1.358 / sqrt(n) for large n
  CHECK(ks_pvalue(1.358 / std::sqrt(10000.0), 10000) == doctest::Approx(0.05).epsilon(0.02));
}

TEST_CASE("correlation helpers") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y{2.0, 4.0, 6.0, 8.0};
  const std::vector<double> z{8.0, 6.0, 4.0, 2.0};
  CHECK(pearson(x, y) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pearson(x, z) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(correlation_pvalue(0.0, 1000) == doctest::Approx(1.0));
  CHECK(correlation_pvalue(0.2, 1000) < 1e-8);
}

TEST_CASE("Hermite suite at N=200 passes with a working negative control") {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::Hermite;
  spec.n = 200;
  spec.beta = 2.0;
  const StatReport r = stat_suite(spec, 42, 2000, 0.01);
  for (const auto& t : r.tests) MESSAGE(t.name, " statistic=", t.statistic, " p=", t.p_value, " passed=", t.passed);
  CHECK(r.all_passed());
  const StatTest* control = find_test(r, "ks_negative_control");
  REQUIRE(control != nullptr);
  CHECK(control->negative_control);
  CHECK(control->p_value < 0.01);
  const StatTest* ks = find_test(r, "ks_weight_beta");
  REQUIRE(ks != nullptr);
  CHECK(ks->p_value > 0.01);
}

TEST_CASE("Laguerre suite passes") {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::Laguerre;
  spec.n = 100;
  spec.tau = 0.5;
  spec.beta = 1.0;
  const StatReport r = stat_suite(spec, 7, 2000, 0.01);
  for (const auto& t : r.tests) MESSAGE(t.name, " statistic=", t.statistic, " p=", t.p_value, " passed=", t.passed);
  CHECK(r.all_passed());
  CHECK(r.samples == 2000);
}
