#pragma once

#include <json.hpp>

#include "spectra/ensembles.hpp"
#include "spectra/equilibria.hpp"
#include "spectra/jacobi.hpp"
#include "spectra/moments_opt.hpp"
#include "spectra/montecarlo.hpp"
#include "spectra/rates.hpp"
#include "spectra/stats.hpp"
#include "spectra/sumrule.hpp"

namespace spectra {

using json = nlohmann::json;

// Infinite values are written as the strings "inf" / "-inf" and NaN as null.
json number_to_json(double v);
double number_from_json(const json& j);

json to_json(const EquilibriumLaw& law);
json to_json(const JacobiCoeffs& J);
json to_json(const DiscreteMeasure& mu);
json to_json(const VerblunskyCoeffs& alpha);
json to_json(const EnsembleSpec& spec);
json to_json(const RateReport& r);
json to_json(const TailJacobiModel& model);
json to_json(const SumRuleReport& r);
json to_json(const ProbeReport& r);
json to_json(const MomentConstraint& c);
json to_json(const McResult& r);
json to_json(const StatReport& r);

/// {"primal", "dual", "coeffs", "flags"} for one constraint.
json moments_result_json(const MomentConstraint& c);

// The readers throw ParameterError on malformed input.
EquilibriumLaw law_from_json(const json& j);
JacobiCoeffs jacobi_from_json(const json& j);
DiscreteMeasure measure_from_json(const json& j);
VerblunskyCoeffs verblunsky_from_json(const json& j);
EnsembleSpec ensemble_from_json(const json& j);
TailJacobiModel model_from_json(const json& j);
MomentConstraint constraint_from_json(const json& j);

/// Parses text as JSON, mapping parse failures to ParameterError.
json parse_json(const std::string& text);

}  // namespace spectra
