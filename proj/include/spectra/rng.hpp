#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace spectra {

/// Deterministic random stream identified by (seed, stream id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
/// the standard pins bit-for-bit. All variates are derived here from raw
/// 64-bit words rather than from <random> distributions, whose algorithms are
/// implementation-defined, so a (seed, stream) pair reproduces the same
/// values on every conforming platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform();
  double standard_normal();
  double normal(double variance);
  /// Gamma with the given shape and scale (mean shape * scale).
  double gamma(double shape, double scale);
  /// Beta(p, q) on (0, 1), density ~ y^{p-1} (1-y)^{q-1}.
  double beta(double p, double q);
  /// Symmetric beta on (-1, 1], density ~ (1-x)^{a-1} (1+x)^{b-1}; mean (b-a)/(a+b).
  double beta_s(double a, double b);
  std::vector<double> dirichlet(std::span<const double> params);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer (Steele, Lea, Flood); used to derive stream ids.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct GaussDist {
  double variance = 1.0;
};
struct GammaDist {
  double shape = 1.0;
  double scale = 1.0;
};
struct BetaSymDist {
  double a = 1.0;
  double b = 1.0;
};
struct DirichletDist {
  std::vector<double> params;
};

using PrimitiveDist = std::variant<GaussDist, GammaDist, BetaSymDist, DirichletDist>;

/// One draw; scalar laws return a single-element vector.
std::vector<double> sample_primitive(const PrimitiveDist& dist, RngStream& rng);

}  // namespace spectra
