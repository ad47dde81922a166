#include "spectra/rng.hpp"

#include <cmath>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffULL); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  return std::seed_seq{lo(seed), hi(seed), lo(stream), hi(stream)};
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << v;
    throw ParameterError(os.str());
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  auto seq = make_seed_seq(seed, stream);
  engine_.seed(seq);
}

double RngStream::uniform() {
  // 53 random bits, offset by half an ulp so that 0 is never returned
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

double RngStream::normal(double variance) {
  if (!(variance >= 0.0)) throw ParameterError("normal variance must be nonnegative");
  return std::sqrt(variance) * standard_normal();
}

double RngStream::gamma(double shape, double scale) {
  require_positive(shape, "gamma shape");
  require_positive(scale, "gamma scale");
  if (shape < 1.0) {
    // boost: Gamma(a) = Gamma(a+1) U^{1/a}
    const double g = gamma(shape + 1.0, 1.0);
    return scale * g * std::pow(uniform(), 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze/rejection
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
  }
}

double RngStream::beta(double p, double q) {
  require_positive(p, "beta parameter p");
  require_positive(q, "beta parameter q");
  const double x = gamma(p, 1.0);
  const double y = gamma(q, 1.0);
  return x / (x + y);
}

double RngStream::beta_s(double a, double b) {
  // (1+x) carries exponent b-1, so x = 2 Y - 1 with Y ~ Beta(b, a)
  require_positive(a, "beta_s parameter a");
  require_positive(b, "beta_s parameter b");
  const double x = gamma(b, 1.0);
  const double y = gamma(a, 1.0);
  return (x - y) / (x + y);
}

std::vector<double> RngStream::dirichlet(std::span<const double> params) {
  if (params.empty()) throw ParameterError("Dirichlet needs at least one parameter");
  std::vector<double> out;
  out.reserve(params.size());
  double total = 0.0;
  for (double p : params) {
    require_positive(p, "Dirichlet parameter");
    out.push_back(gamma(p, 1.0));
    total += out.back();
  }
  for (double& v : out) v /= total;
  return out;
}

std::vector<double> sample_primitive(const PrimitiveDist& dist, RngStream& rng) {
  struct Visitor {
    RngStream& rng;
    std::vector<double> operator()(const GaussDist& g) const { return {rng.normal(g.variance)}; }
    std::vector<double> operator()(const GammaDist& g) const { return {rng.gamma(g.shape, g.scale)}; }
    std::vector<double> operator()(const BetaSymDist& g) const { return {rng.beta_s(g.a, g.b)}; }
    std::vector<double> operator()(const DirichletDist& g) const { return rng.dirichlet(g.params); }
  };
  return std::visit(Visitor{rng}, dist);
}

}  // namespace spectra
