#include "spectra/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <locale>
#include <ostream>
#include <sstream>
#include <thread>

#include "spectra/error.hpp"
#include "spectra/rates.hpp"
#include "spectra/sumrule.hpp"

namespace spectra {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Interval model_bulk(const EnsembleSpec& spec) {
  switch (spec.kind) {
    case EnsembleKind::Hermite:
      return {-2.0, 2.0};
    case EnsembleKind::Laguerre: {
      const double tau = spec.laguerre_tau();
      return {mp_lower_edge(tau), mp_upper_edge(tau)};
    }
    case EnsembleKind::JacobiKN:
      if (spec.has_slopes()) {
        const EquilibriumLaw law = jacobi_reference_law(*spec.kappa1, *spec.kappa2);
        const Interval s = law.support();
        if (spec.unit_interval) return s;
        return {affine_r(s.lo), affine_r(s.hi)};
      }
      return spec.unit_interval ? Interval{0.0, 1.0} : Interval{-2.0, 2.0};
  }
  return {-2.0, 2.0};
}

}  // namespace

bool McResult::error_non_increasing() const {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs(rows[i].rate_hat - rows[i].theory) > std::abs(rows[i - 1].rate_hat - rows[i - 1].theory))
      return false;
  }
  return true;
}

double tail_rate_theory(const EnsembleSpec& spec, double x, TailDirection direction) {
  EdgeCost c;
  switch (spec.kind) {
    case EnsembleKind::Hermite:
      c = rate_fg(x);
      break;
    case EnsembleKind::Laguerre:
      c = rate_fl(x, spec.laguerre_tau());
      break;
    case EnsembleKind::JacobiKN: {
      if (!spec.has_slopes()) return kNaN;
      const EquilibriumLaw law = jacobi_reference_law(*spec.kappa1, *spec.kappa2);
      const double y = spec.unit_interval ? x : affine_s(x);
      c = rate_fj(y, law.u_minus(), law.u_plus());
      break;
    }
  }
  const Interval bulk = model_bulk(spec);
  if (!c.on_leg) return 0.0;
  // the leg must match the direction
  if (direction == TailDirection::MaxAbove && x < bulk.hi) return 0.0;
  if (direction == TailDirection::MinBelow && x > bulk.lo) return 0.0;
  return c.value;
}

std::size_t mc_count_hits(const EnsembleSpec& spec, double x, TailDirection direction, std::uint64_t seed,
                          std::uint64_t first, std::uint64_t last) {
  std::size_t hits = 0;
  for (std::uint64_t i = first; i < last; ++i) {
    RngStream rng = sample_stream(seed, spec, i);
    const JacobiCoeffs J = sample_jacobi_matrix(spec, rng);
    const std::size_t below = sturm_count_below(J, x);
    if (direction == TailDirection::MaxAbove ? below < J.size() : below >= 1) ++hits;
  }
  return hits;
}

McResult mc_tail_rate(const McExperiment& exp) {
  if (exp.samples < 1) throw ParameterError("samples must be >= 1");
  if (exp.n_list.empty()) throw ParameterError("the N list is empty");
  McResult result;
  EnsembleSpec base = exp.spec;
  base.n = exp.n_list.front();
  result.theory = tail_rate_theory(base, exp.threshold, exp.direction);

  const Interval bulk = model_bulk(base);
  const bool outside = exp.direction == TailDirection::MaxAbove ? exp.threshold >= bulk.hi : exp.threshold <= bulk.lo;
  if (!outside) {
    std::ostringstream os;
    os << "threshold " << exp.threshold << " is not beyond the bulk edge; the probability tends to 1 and the rate is 0";
    result.warnings.push_back(os.str());
  }

  const unsigned workers = std::max(1u, exp.workers);
  for (std::size_t n : exp.n_list) {
    EnsembleSpec spec = exp.spec;
    spec.n = n;
    spec.validate();
    const double speed = spec.beta_prime() * static_cast<double>(n);

    if (std::isfinite(result.theory) && result.theory > 0.0) {
      const double expected = static_cast<double>(exp.samples) * std::exp(-speed * result.theory);
      if (expected < 30.0) {
        std::ostringstream os;
        os << "N=" << n << ": about " << expected << " expected hits (exp(-beta' N F) estimate), below 30";
        result.warnings.push_back(os.str());
      }
    }

    std::vector<std::size_t> counts(workers, 0);
    std::vector<std::thread> pool;
    const std::uint64_t total = exp.samples;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t first = total * w / workers;
      const std::uint64_t last = total * (w + 1) / workers;
      pool.emplace_back([&, w, first, last] {
        counts[w] = mc_count_hits(spec, exp.threshold, exp.direction, exp.seed, first, last);
      });
    }
    for (auto& t : pool) t.join();

    McRow row;
    row.n = n;
    row.x = exp.threshold;
    row.samples = exp.samples;
    for (std::size_t c : counts) row.hits += c;
    row.theory = result.theory;
    const double S = static_cast<double>(exp.samples);
    row.p_hat = static_cast<double>(row.hits) / S;
    if (row.hits == 0) {
      const double p_up = 1.0 - std::pow(0.05, 1.0 / S);
      row.rate_hat = -std::log(p_up) / speed;
      row.stderr_rate = kInf;
      row.lower_bound = true;
      std::ostringstream os;
      os << "N=" << n << ": zero hits, rate_hat is a 95% lower bound";
      result.warnings.push_back(os.str());
    } else {
      row.rate_hat = -std::log(row.p_hat) / speed;
      row.stderr_rate = std::sqrt((1.0 - row.p_hat) / (row.p_hat * S)) / speed;
    }
    result.rows.push_back(row);
  }
  return result;
}

void write_csv(std::ostream& os, const McResult& result) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(10);
  out << "N,x,samples,hits,p_hat,rate_hat,stderr,theory\n";
  for (const McRow& r : result.rows) {
    out << r.n << ',' << r.x << ',' << r.samples << ',' << r.hits << ',' << r.p_hat << ',' << r.rate_hat << ','
        << r.stderr_rate << ',' << r.theory << '\n';
  }
  os << out.str();
}

std::string to_csv(const McResult& result) {
  std::ostringstream os;
  write_csv(os, result);
  return os.str();
}

BernoulliCheck bernoulli_self_test(double p, std::size_t samples, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("Bernoulli p must lie in (0,1)");
  if (samples < 1) throw ParameterError("samples must be >= 1");
  BernoulliCheck out;
  out.p = p;
  out.samples = samples;
  RngStream rng(seed, 0xbe5u);
  for (std::size_t i = 0; i < samples; ++i) {
    if (rng.uniform() < p) ++out.hits;
  }
  const double S = static_cast<double>(samples);
  const double p_hat = static_cast<double>(out.hits) / S;
  if (out.hits == 0) {
    out.log_estimate = kInf;
    out.log_stderr = kInf;
    out.z_score = kInf;
    return out;
  }
  out.log_estimate = -std::log(p_hat);
  out.log_stderr = std::sqrt((1.0 - p_hat) / (p_hat * S));
  out.z_score = (out.log_estimate + std::log(p)) / out.log_stderr;
  return out;
}

}  // namespace spectra
