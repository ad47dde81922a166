#include "spectra/serialize.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

namespace {

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw ParameterError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(number_from_json(v));
  return out;
}

json number_array(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(number_to_json(x));
  return arr;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParameterError(std::string("missing field '") + key + "'");
  return j.at(key);
}

json outliers_json(const std::vector<Outlier>& outs) {
  json arr = json::array();
  for (const Outlier& o : outs) arr.push_back(json::array({number_to_json(o.location), number_to_json(o.mass)}));
  return arr;
}

std::string interval_name(bool unit) { return unit ? "[0,1]" : "[-2,2]"; }

bool parse_interval(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "[0,1]") return true;
  if (s == "[-2,2]") return false;
  throw ParameterError("interval must be \"[-2,2]\" or \"[0,1]\", got " + s);
}

}  // namespace

json number_to_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  throw ParameterError("expected a number, got " + j.dump());
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("invalid JSON: ") + e.what());
  }
}

json to_json(const EquilibriumLaw& law) {
  json j;
  switch (law.family()) {
    case Family::SemiCircle:
      j["family"] = "sc";
      break;
    case Family::MarchenkoPastur:
      j["family"] = "mp";
      j["tau"] = law.tau();
      break;
    case Family::KestenMcKay:
      j["family"] = "kmk";
      j["u_minus"] = law.u_minus();
      j["u_plus"] = law.u_plus();
      break;
    case Family::Arcsine:
      j["family"] = "arcsine";
      j["interval"] = interval_name(law.arcsine_interval() == ArcsineInterval::Unit);
      break;
  }
  return j;
}

EquilibriumLaw law_from_json(const json& j) {
  try {
    const std::string family = field(j, "family").get<std::string>();
    if (family == "sc") return EquilibriumLaw::semicircle();
    if (family == "mp") return EquilibriumLaw::marchenko_pastur(number_from_json(field(j, "tau")));
    if (family == "kmk")
      return EquilibriumLaw::kesten_mckay(number_from_json(field(j, "u_minus")), number_from_json(field(j, "u_plus")));
    if (family == "arcsine") {
      const bool unit = j.contains("interval") && parse_interval(j.at("interval"));
      return EquilibriumLaw::arcsine(unit ? ArcsineInterval::Unit : ArcsineInterval::Symmetric);
    }
    throw ParameterError("unknown family '" + family + "'");
  } catch (const json::exception& e) {
    throw ParameterError(std::string("bad equilibrium law JSON: ") + e.what());
  }
}

json to_json(const JacobiCoeffs& J) { return {{"b", number_array(J.b)}, {"a", number_array(J.a)}}; }

JacobiCoeffs jacobi_from_json(const json& j) {
  if (!j.is_object()) throw ParameterError("Jacobi coefficients must be an object {\"b\", \"a\"}");
  JacobiCoeffs J;
  J.b = j.contains("b") ? numbers(j.at("b"), "b") : std::vector<double>{};
  J.a = j.contains("a") ? numbers(j.at("a"), "a") : std::vector<double>{};
  return J;
}

json to_json(const DiscreteMeasure& mu) {
  json atoms = json::array();
  for (const Atom& a : mu.atoms) atoms.push_back(json::array({a.location, a.weight}));
  return {{"atoms", atoms}};
}

DiscreteMeasure measure_from_json(const json& j) {
  DiscreteMeasure mu;
  const json& atoms = field(j, "atoms");
  if (!atoms.is_array()) throw ParameterError("atoms must be an array");
  for (const auto& a : atoms) {
    if (!a.is_array() || a.size() != 2) throw ParameterError("each atom must be [x, w]");
    mu.atoms.push_back({number_from_json(a[0]), number_from_json(a[1])});
  }
  return mu;
}

json to_json(const VerblunskyCoeffs& alpha) { return {{"alpha", number_array(alpha.alpha)}}; }

VerblunskyCoeffs verblunsky_from_json(const json& j) { return {numbers(field(j, "alpha"), "alpha")}; }

json to_json(const EnsembleSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  j["n"] = spec.n;
  j["beta"] = spec.beta;
  if (spec.kind == EnsembleKind::Laguerre) {
    j["m"] = spec.laguerre_m();
    j["tau"] = spec.laguerre_tau();
  }
  if (spec.kind == EnsembleKind::JacobiKN) {
    j["a"] = spec.jacobi_a();
    j["b"] = spec.jacobi_b();
    if (spec.has_slopes()) {
      j["kappa1"] = *spec.kappa1;
      j["kappa2"] = *spec.kappa2;
    }
    j["interval"] = interval_name(spec.unit_interval);
  }
  return j;
}

EnsembleSpec ensemble_from_json(const json& j) {
  try {
    EnsembleSpec s;
    s.kind = ensemble_kind_from_string(field(j, "kind").get<std::string>());
    s.n = field(j, "n").get<std::size_t>();
    if (j.contains("beta")) s.beta = number_from_json(j.at("beta"));
    if (j.contains("m") && !j.at("m").is_null()) s.m = j.at("m").get<std::size_t>();
    if (j.contains("tau") && !j.at("tau").is_null()) s.tau = number_from_json(j.at("tau"));
    if (s.m && s.tau) s.tau.reset();  // m wins when both are present
    if (j.contains("a")) s.a = number_from_json(j.at("a"));
    if (j.contains("b")) s.b = number_from_json(j.at("b"));
    if (j.contains("kappa1") && !j.at("kappa1").is_null()) s.kappa1 = number_from_json(j.at("kappa1"));
    if (j.contains("kappa2") && !j.at("kappa2").is_null()) s.kappa2 = number_from_json(j.at("kappa2"));
    if (j.contains("interval")) s.unit_interval = parse_interval(j.at("interval"));
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ParameterError(std::string("bad ensemble JSON: ") + e.what());
  }
}

json to_json(const RateReport& r) {
  json terms = json::array();
  for (const RateTerm& t : r.terms) terms.push_back({{"label", t.label}, {"value", number_to_json(t.value)}});
  json j{{"value", number_to_json(r.value)},
         {"terms", terms},
         {"truncation", r.truncation},
         {"tail_bound", number_to_json(r.tail_bound)},
         {"flags", r.flags}};
  if (r.alternate_form) j["alternate_form"] = number_to_json(*r.alternate_form);
  return j;
}

json to_json(const TailJacobiModel& model) {
  return {{"tail", {{"a", model.tail_a}, {"b", model.tail_b}}}, {"head", to_json(model.head)}};
}

TailJacobiModel model_from_json(const json& j) {
  TailJacobiModel m;
  if (!j.is_object()) throw ParameterError("model must be a JSON object");
  if (j.contains("tail")) {
    const json& t = j.at("tail");
    m.tail_a = number_from_json(field(t, "a"));
    m.tail_b = number_from_json(field(t, "b"));
  }
  if (j.contains("head")) m.head = jacobi_from_json(j.at("head"));
  m.validate();
  return m;
}

json to_json(const SumRuleReport& r) {
  return {{"jacobi_side", number_to_json(r.jacobi_side)},
          {"measure_side", number_to_json(r.measure_side)},
          {"gap", number_to_json(r.gap)},
          {"outliers", outliers_json(r.outliers)},
          {"jacobi_detail", to_json(r.jacobi_detail)},
          {"measure_detail", to_json(r.measure_detail)}};
}

json to_json(const ProbeReport& r) {
  return {{"family", r.family},
          {"label", r.label},
          {"coefficient_side", number_to_json(r.coefficient_side)},
          {"measure_side", number_to_json(r.measure_side)},
          {"gap", number_to_json(r.gap)},
          {"outliers", outliers_json(r.outliers)},
          {"coefficient_detail", to_json(r.coefficient_detail)},
          {"measure_detail", to_json(r.measure_detail)},
          {"flags", r.flags}};
}

json to_json(const MomentConstraint& c) { return {{"c", number_array(c.c)}}; }

MomentConstraint constraint_from_json(const json& j) {
  MomentConstraint c{numbers(field(j, "c"), "c")};
  c.order();
  return c;
}

json moments_result_json(const MomentConstraint& c) {
  const JacobiCoeffs J = moments_to_jacobi(c);
  const double primal = hermite_rate(J).value;
  const DualResult dual = constrained_rate_dual(c);
  return {{"primal", number_to_json(primal)},
          {"dual", number_to_json(dual.value)},
          {"coeffs", to_json(J)},
          {"gradient_norm", dual.gradient_norm},
          {"flags", dual.flags}};
}

json to_json(const McResult& r) {
  json rows = json::array();
  for (const McRow& row : r.rows) {
    rows.push_back({{"N", row.n},
                    {"x", row.x},
                    {"samples", row.samples},
                    {"hits", row.hits},
                    {"p_hat", row.p_hat},
                    {"rate_hat", number_to_json(row.rate_hat)},
                    {"stderr", number_to_json(row.stderr_rate)},
                    {"theory", number_to_json(row.theory)},
                    {"lower_bound", row.lower_bound}});
  }
  return {{"rows", rows},
          {"theory", number_to_json(r.theory)},
          {"error_non_increasing", r.error_non_increasing()},
          {"warnings", r.warnings}};
}

json to_json(const StatReport& r) {
  json tests = json::array();
  for (const StatTest& t : r.tests) {
    tests.push_back({{"name", t.name},
                     {"statistic", number_to_json(t.statistic)},
                     {"p_value", number_to_json(t.p_value)},
                     {"negative_control", t.negative_control},
                     {"passed", t.passed}});
  }
  return {{"spec", to_json(r.spec)}, {"seed", r.seed},   {"samples", r.samples},
          {"alpha", r.alpha},        {"tests", tests}, {"all_passed", r.all_passed()}};
}

}  // namespace spectra
