#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spectra/ensembles.hpp"

namespace spectra {

/// sup |F_n - F| of the sample against the continuous CDF `cdf`.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov tail probability with Stephens' finite-n correction.
double ks_pvalue(double d, std::size_t n);

double pearson(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value of a correlation under independence (Fisher z).
double correlation_pvalue(double r, std::size_t n);

struct StatTest {
  std::string name;
  double statistic = 0.0;
  double p_value = 0.0;
  bool passed = false;
  bool negative_control = false;  // passes when the test rejects
};

struct StatReport {
  EnsembleSpec spec;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double alpha = 0.01;
  std::vector<StatTest> tests;

  bool all_passed() const;
};

/// KS of the weight at lambda_max against Beta(beta', (m-1) beta'), the
/// correlation of lambda_max with that weight, moment means, and a negative
/// control (KS against Beta(2 beta', (m-1) beta')). m is the matrix size.
StatReport stat_suite(const EnsembleSpec& spec, std::uint64_t seed, std::size_t samples = 2000,
                      double alpha = 0.01);

}  // namespace spectra
