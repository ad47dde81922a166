#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spectra/ensembles.hpp"

namespace spectra {

enum class TailDirection { MaxAbove, MinBelow };

struct McExperiment {
  EnsembleSpec spec;  // spec.n is ignored; the sizes come from n_list
  double threshold = 0.0;
  std::vector<std::size_t> n_list;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  TailDirection direction = TailDirection::MaxAbove;
  unsigned workers = 1;
};

struct McRow {
  std::size_t n = 0;
  double x = 0.0;
  std::size_t samples = 0;
  std::size_t hits = 0;
  double p_hat = 0.0;
  double rate_hat = 0.0;
  double stderr_rate = 0.0;  // +inf with zero hits
  double theory = 0.0;
  bool lower_bound = false;  // zero hits: rate_hat is a 95% lower bound
};

struct McResult {
  std::vector<McRow> rows;
  double theory = 0.0;  // NaN when the model has no closed-form rate
  std::vector<std::string> warnings;

  /// |rate_hat - theory| is non-increasing along the rows.
  bool error_non_increasing() const;
};

/// Limiting rate of P(lambda_max >= x) (or P(lambda_min <= x)) for the model, NaN if unknown.
double tail_rate_theory(const EnsembleSpec& spec, double x, TailDirection direction);

/// Hit counts from tridiagonal samples, one RNG stream per sample: results do
/// not depend on the number of workers.
McResult mc_tail_rate(const McExperiment& exp);

/// Hits among samples [first, last) for one size; exposed for tests.
std::size_t mc_count_hits(const EnsembleSpec& spec, double x, TailDirection direction, std::uint64_t seed,
                          std::uint64_t first, std::uint64_t last);

/// CSV with the header N,x,samples,hits,p_hat,rate_hat,stderr,theory.
void write_csv(std::ostream& os, const McResult& result);
std::string to_csv(const McResult& result);

/// Harness check of the estimator on a synthetic Bernoulli(p) stream.
struct BernoulliCheck {
  double p = 0.0;
  std::size_t samples = 0;
  std::size_t hits = 0;
  double log_estimate = 0.0;  // -log p_hat
  double log_stderr = 0.0;
  double z_score = 0.0;       // (-log p_hat + log p) / stderr
};
BernoulliCheck bernoulli_self_test(double p, std::size_t samples, std::uint64_t seed);

}  // namespace spectra
