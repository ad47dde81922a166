// Python bindings. Structured results cross the boundary as JSON text;
// the package wrapper turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spectra/ensembles.hpp"
#include "spectra/equilibria.hpp"
#include "spectra/error.hpp"
#include "spectra/jacobi.hpp"
#include "spectra/moments_opt.hpp"
#include "spectra/montecarlo.hpp"
#include "spectra/rates.hpp"
#include "spectra/serialize.hpp"
#include "spectra/stats.hpp"
#include "spectra/sumrule.hpp"

namespace py = pybind11;
using namespace spectra;

namespace {

std::string dump(const json& j) { return j.dump(); }

std::pair<double, bool> edge(const EdgeCost& c) { return {c.value, c.on_leg}; }

TailDirection direction_from_string(const std::string& s) {
  if (s == "max") return TailDirection::MaxAbove;
  if (s == "min") return TailDirection::MinBelow;
  throw ParameterError("direction must be max or min");
}

}  // namespace

PYBIND11_MODULE(_spectra, m) {
  m.doc() = "spectral sum rules, beta-ensemble samplers and large-deviation rates";

  static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
  static py::exception<NumericalError> numerical(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(validation.ptr(), e.what());
    } catch (const NumericalError& e) {
      PyErr_SetString(numerical.ptr(), e.what());
    }
  });

  m.def("rate_fg", [](double x) { return edge(rate_fg(x)); }, py::arg("x"));
  m.def("rate_fl", [](double x, double tau) { return edge(rate_fl(x, tau)); }, py::arg("x"), py::arg("tau"));
  m.def(
      "rate_fj", [](double x, double um, double up) { return edge(rate_fj(x, um, up)); }, py::arg("x"),
      py::arg("u_minus"), py::arg("u_plus"));
  m.def("small_g", &small_g, py::arg("x"));
  m.def("big_G", &big_G, py::arg("x"));
  m.def(
      "beta_h", [](double u, double v, double q, bool literal) {
        return beta_h(u, v, q, literal ? BetaRateVariant::Literal : BetaRateVariant::Corrected);
      },
      py::arg("u"), py::arg("v"), py::arg("q"), py::arg("literal") = false);

  m.def(
      "hermite_rate", [](std::vector<double> b, std::vector<double> a) {
        return dump(to_json(hermite_rate(JacobiCoeffs{std::move(b), std::move(a)})));
      },
      py::arg("b"), py::arg("a"));
  m.def(
      "laguerre_rate", [](const std::vector<double>& d, const std::vector<double>& s, double tau) {
        return dump(to_json(laguerre_rate(d, s, tau)));
      },
      py::arg("d"), py::arg("s"), py::arg("tau"));
  m.def(
      "jacobi_ensemble_rate", [](std::vector<double> alpha, double k1, double k2) {
        return dump(to_json(jacobi_ensemble_rate(VerblunskyCoeffs{std::move(alpha)}, k1, k2)));
      },
      py::arg("alpha"), py::arg("kappa1"), py::arg("kappa2"));

  m.def(
      "law_density", [](const std::string& law, const std::vector<double>& xs) {
        const EquilibriumLaw l = law_from_json(parse_json(law));
        std::vector<double> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back(l.density(x));
        return out;
      },
      py::arg("law"), py::arg("x"));
  m.def(
      "law_moment", [](const std::string& law, int k) { return law_from_json(parse_json(law)).moment(k); },
      py::arg("law"), py::arg("k"));

  m.def(
      "spectral_decompose", [](std::vector<double> b, std::vector<double> a) {
        return dump(to_json(spectral_decompose(JacobiCoeffs{std::move(b), std::move(a)})));
      },
      py::arg("b"), py::arg("a"));
  m.def(
      "measure_to_jacobi", [](const std::string& measure) {
        return dump(to_json(measure_to_jacobi(measure_from_json(parse_json(measure)))));
      },
      py::arg("measure"));
  m.def(
      "jacobi_moments", [](std::vector<double> b, std::vector<double> a, std::size_t j, std::size_t rmax) {
        return jacobi_moments(JacobiCoeffs{std::move(b), std::move(a)}, j, rmax).values;
      },
      py::arg("b"), py::arg("a"), py::arg("j"), py::arg("rmax"));
  m.def(
      "geronimus", [](std::vector<double> alpha, std::size_t n) {
        return dump(to_json(geronimus(VerblunskyCoeffs{std::move(alpha)}, n)));
      },
      py::arg("alpha"), py::arg("n"));

  m.def(
      "sample", [](const std::string& spec, std::uint64_t seed, std::uint64_t index) {
        const EnsembleSpec s = ensemble_from_json(parse_json(spec));
        RngStream rng = sample_stream(seed, s, index);
        return dump(to_json(sample_jacobi_matrix(s, rng)));
      },
      py::arg("spec"), py::arg("seed"), py::arg("index") = 0);

  m.def(
      "sumrule_verify", [](const std::string& model) {
        return dump(to_json(sumrule_verify(model_from_json(parse_json(model)))));
      },
      py::arg("model"));
  m.def(
      "probe_laguerre", [](const std::string& model, double tau) {
        return dump(to_json(conjecture_probe(model_from_json(parse_json(model)), LaguerreFamily{tau})));
      },
      py::arg("model"), py::arg("tau"));
  m.def(
      "probe_jacobi", [](std::vector<double> alpha, double k1, double k2) {
        return dump(to_json(conjecture_probe(VerblunskyCoeffs{std::move(alpha)}, JacobiKNFamily{k1, k2})));
      },
      py::arg("alpha"), py::arg("kappa1"), py::arg("kappa2"));
  m.def(
      "moments", [](std::vector<double> c) { return dump(moments_result_json(MomentConstraint{std::move(c)})); },
      py::arg("c"));

  m.def(
      "mc_tail_rate",
      [](const std::string& spec, double x, std::vector<std::size_t> n_list, std::size_t samples, std::uint64_t seed,
         const std::string& direction, unsigned workers) {
        McExperiment e;
        e.spec = ensemble_from_json(parse_json(spec));
        e.threshold = x;
        e.n_list = std::move(n_list);
        e.samples = samples;
        e.seed = seed;
        e.direction = direction_from_string(direction);
        e.workers = workers;
        McResult r;
        {
          py::gil_scoped_release release;
          r = mc_tail_rate(e);
        }
        return dump(to_json(r));
      },
      py::arg("spec"), py::arg("x"), py::arg("n_list"), py::arg("samples"), py::arg("seed"),
      py::arg("direction") = "max", py::arg("workers") = 1);
  m.def(
      "stat_suite", [](const std::string& spec, std::uint64_t seed, std::size_t samples, double alpha) {
        return dump(to_json(stat_suite(ensemble_from_json(parse_json(spec)), seed, samples, alpha)));
      },
      py::arg("spec"), py::arg("seed"), py::arg("samples") = 2000, py::arg("alpha") = 0.01);
}
