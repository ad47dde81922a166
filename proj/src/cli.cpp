#include "spectra/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>

#include "spectra/error.hpp"
#include "spectra/serialize.hpp"

namespace spectra {

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // empty: the subcommand's default
  double tol = 1e-6;
  unsigned workers = 1;
};

struct EnsembleArgs {
  std::string spec_file;
  std::string kind = "hermite";
  std::size_t n = 8;
  double beta = 2.0;
  std::optional<std::size_t> m;
  std::optional<double> tau;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> kappa1;
  std::optional<double> kappa2;
  bool unit = false;
};

void add_ensemble_options(CLI::App* cmd, EnsembleArgs& e) {
  cmd->add_option("--spec", e.spec_file, "EnsembleSpec JSON file (overrides the flags below)");
  cmd->add_option("--ensemble", e.kind, "hermite | laguerre | jacobi_kn");
  cmd->add_option("--n", e.n, "matrix size N");
  cmd->add_option("--beta", e.beta, "beta > 0");
  cmd->add_option("--m", e.m, "Laguerre: size m <= N");
  cmd->add_option("--tau", e.tau, "Laguerre: ratio m/N in (0,1]");
  cmd->add_option("--a", e.a, "Jacobi: exponent a > -1");
  cmd->add_option("--b", e.b, "Jacobi: exponent b > -1");
  cmd->add_option("--kappa1", e.kappa1, "Jacobi: slope of b(N)");
  cmd->add_option("--kappa2", e.kappa2, "Jacobi: slope of a(N)");
  cmd->add_flag("--unit-interval", e.unit, "Jacobi: report the [0,1] image");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) { return parse_json(read_file(path)); }

EnsembleSpec build_spec(const EnsembleArgs& e) {
  if (!e.spec_file.empty()) return ensemble_from_json(read_json_file(e.spec_file));
  EnsembleSpec s;
  s.kind = ensemble_kind_from_string(e.kind);
  s.n = e.n;
  s.beta = e.beta;
  s.m = e.m;
  s.tau = e.m ? std::nullopt : e.tau;
  s.a = e.a;
  s.b = e.b;
  s.kappa1 = e.kappa1;
  s.kappa2 = e.kappa2;
  s.unit_interval = e.unit;
  s.validate();
  return s;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(12) << v;
  return os.str();
}

std::string csv_line(const std::vector<double>& values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_number(values[i]);
  }
  return line + '\n';
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw ParameterError("cannot write '" + c.out + "'");
  file << text;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

void check_format(const std::string& f) {
  if (!f.empty() && f != "json" && f != "csv") throw ParameterError("--format must be json or csv");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"spectra: spectral measures, sum rules and large deviations of beta ensembles"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "RNG seed (SPECTRA_SEED overrides)");
  app.add_option("--out", common.out, "output file (default stdout)");
  app.add_option("--format", common.format, "json | csv");
  app.add_option("--tol", common.tol, "agreement tolerance for verifier reports");
  app.add_option("--workers", common.workers, "Monte Carlo worker threads");

  // sample
  EnsembleArgs sample_ens;
  std::size_t sample_count = 1;
  auto* sample = app.add_subcommand("sample", "draw tridiagonal ensemble samples");
  add_ensemble_options(sample, sample_ens);
  sample->add_option("--samples", sample_count, "number of samples");

  // sumrule
  std::string model_file;
  std::vector<double> head_b, head_a;
  auto* sumrule = app.add_subcommand("sumrule", "verify the semicircle sum rule for a free-tail model");
  sumrule->add_option("--model", model_file, "TailJacobiModel JSON file");
  sumrule->add_option("--head-b", head_b, "head diagonal")->delimiter(',');
  sumrule->add_option("--head-a", head_a, "head off-diagonal")->delimiter(',');

  // rate
  std::string family;
  double x = 0.0;
  double rate_tau = 1.0;
  double u_minus = 0.0, u_plus = 1.0;
  std::string coeffs_file;
  std::vector<double> rate_b, rate_a, rate_d, rate_s, rate_alpha;
  double rk1 = 0.0, rk2 = 0.0;
  std::string variant = "corrected";
  auto* rate = app.add_subcommand("rate", "evaluate a rate function");
  rate->add_option("--family", family, "fg | fl | fj | hermite | laguerre | jacobi")->required();
  rate->add_option("--x", x, "point for fg / fl / fj");
  rate->add_option("--tau", rate_tau, "Laguerre ratio");
  rate->add_option("--u-minus", u_minus, "KMK lower edge");
  rate->add_option("--u-plus", u_plus, "KMK upper edge");
  rate->add_option("--coeffs", coeffs_file, "JacobiCoeffs JSON file (hermite)");
  rate->add_option("--jb", rate_b, "diagonal (hermite)")->delimiter(',');
  rate->add_option("--ja", rate_a, "off-diagonal (hermite)")->delimiter(',');
  rate->add_option("--d", rate_d, "bidiagonal d (laguerre)")->delimiter(',');
  rate->add_option("--s", rate_s, "bidiagonal s (laguerre)")->delimiter(',');
  rate->add_option("--alpha", rate_alpha, "Verblunsky coefficients (jacobi)")->delimiter(',');
  rate->add_option("--kappa1", rk1, "Jacobi slope kappa1");
  rate->add_option("--kappa2", rk2, "Jacobi slope kappa2");
  rate->add_option("--variant", variant, "corrected | literal (jacobi)");

  // mc
  EnsembleArgs mc_ens;
  std::string experiment_file;
  double threshold = 2.2;
  std::vector<std::size_t> n_list{20, 40, 80};
  std::size_t mc_samples = 10000;
  std::string direction = "max";
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of an extreme-eigenvalue tail rate");
  add_ensemble_options(mc, mc_ens);
  mc->add_option("--experiment", experiment_file, "McExperiment JSON file");
  mc->add_option("--x", threshold, "threshold");
  mc->add_option("--n-list", n_list, "matrix sizes")->delimiter(',');
  mc->add_option("--samples", mc_samples, "samples per size");
  mc->add_option("--direction", direction, "max (lambda_max >= x) | min (lambda_min <= x)");

  // moments
  std::string constraint_file;
  std::vector<double> cvals;
  auto* moments = app.add_subcommand("moments", "constrained Hermite rate: primal and dual values");
  moments->add_option("--constraint", constraint_file, "MomentConstraint JSON file");
  moments->add_option("--c", cvals, "moments c_1..c_{2l-1}")->delimiter(',');

  // probe
  std::string probe_family;
  std::string probe_model;
  std::vector<double> probe_b, probe_a, probe_alpha;
  double probe_tau = 1.0, pk1 = 0.0, pk2 = 0.0;
  auto* probe = app.add_subcommand("probe", "conjectured sum rules: coefficient side versus measure side");
  probe->add_option("--family", probe_family, "laguerre | jacobi")->required();
  probe->add_option("--model", probe_model, "TailJacobiModel JSON file (laguerre)");
  probe->add_option("--head-b", probe_b, "head diagonal (laguerre)")->delimiter(',');
  probe->add_option("--head-a", probe_a, "head off-diagonal (laguerre)")->delimiter(',');
  probe->add_option("--tau", probe_tau, "Laguerre ratio");
  probe->add_option("--alpha", probe_alpha, "Verblunsky head (jacobi)")->delimiter(',');
  probe->add_option("--kappa1", pk1, "Jacobi slope kappa1");
  probe->add_option("--kappa2", pk2, "Jacobi slope kappa2");

  // stats
  EnsembleArgs stats_ens;
  stats_ens.n = 200;
  std::size_t stat_samples = 2000;
  double stat_alpha = 0.01;
  auto* stats = app.add_subcommand("stats", "distributional test suite");
  add_ensemble_options(stats, stats_ens);
  stats->add_option("--samples", stat_samples, "number of samples");
  stats->add_option("--alpha", stat_alpha, "significance level");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  if (const char* env = std::getenv("SPECTRA_SEED")) {
    try {
      common.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: SPECTRA_SEED must be an unsigned integer\n";
      return 1;
    }
  }

  try {
    check_format(common.format);
    const bool csv = common.format == "csv";

    if (*sample) {
      const EnsembleSpec spec = build_spec(sample_ens);
      json items = json::array();
      std::string csv_text = "sample,x,w\n";
      for (std::size_t i = 0; i < sample_count; ++i) {
        RngStream rng = sample_stream(common.seed, spec, i);
        json item;
        JacobiCoeffs J;
        if (spec.kind == EnsembleKind::JacobiKN) {
          const JacobiKNSample s = sample_jacobi_kn(spec, rng);
          J = s.jacobi;
          item["alpha"] = to_json(s.alpha)["alpha"];
        } else {
          J = sample_jacobi_matrix(spec, rng);
        }
        const DiscreteMeasure mu = spectral_measure(J);
        item["atoms"] = to_json(mu)["atoms"];
        item["coeffs"] = to_json(J);
        for (const Atom& a : mu.atoms) csv_text += std::to_string(i) + "," + csv_line({a.location, a.weight});
        items.push_back(item);
      }
      if (csv) {
        emit(common, out, csv_text);
      } else {
        json doc = sample_count == 1 ? items[0] : json{{"samples", items}};
        doc["spec"] = to_json(spec);
        doc["seed"] = common.seed;
        emit(common, out, json_text(doc));
      }
      return 0;
    }

    if (*sumrule) {
      TailJacobiModel model;
      if (!model_file.empty()) {
        model = model_from_json(read_json_file(model_file));
      } else {
        model.head.b = head_b;
        model.head.a = head_a;
        model.validate();
      }
      const SumRuleReport r = sumrule_verify(model);
      if (csv) {
        emit(common, out, "jacobi_side,measure_side,gap\n" + csv_line({r.jacobi_side, r.measure_side, r.gap}));
      } else {
        json j = to_json(r);
        j["tol"] = common.tol;
        j["agrees"] = r.gap <= common.tol * (1.0 + std::abs(r.jacobi_side));
        emit(common, out, json_text(j));
      }
      return 0;
    }

    if (*rate) {
      RateReport r;
      if (family == "fg" || family == "fl" || family == "fj") {
        EdgeCost c = family == "fg"   ? rate_fg(x)
                     : family == "fl" ? rate_fl(x, rate_tau)
                                      : rate_fj(x, u_minus, u_plus);
        r.add(family + "(" + format_number(x) + ")", c.value);
        if (!c.on_leg) r.flags.emplace_back("inside-bulk");
      } else if (family == "hermite") {
        JacobiCoeffs J = coeffs_file.empty() ? JacobiCoeffs{rate_b, rate_a} : jacobi_from_json(read_json_file(coeffs_file));
        r = hermite_rate(J);
      } else if (family == "laguerre") {
        r = laguerre_rate(rate_d, rate_s, rate_tau);
      } else if (family == "jacobi") {
        if (variant != "corrected" && variant != "literal") throw ParameterError("--variant must be corrected or literal");
        r = jacobi_ensemble_rate({rate_alpha}, rk1, rk2,
                                 variant == "literal" ? BetaRateVariant::Literal : BetaRateVariant::Corrected);
      } else {
        throw ParameterError("unknown rate family '" + family + "'");
      }
      if (csv) {
        emit(common, out, "value\n" + csv_line({r.value}));
      } else {
        emit(common, out, json_text(to_json(r)));
      }
      return 0;
    }

    if (*mc) {
      McExperiment exp;
      if (!experiment_file.empty()) {
        const json j = read_json_file(experiment_file);
        try {
          exp.spec = ensemble_from_json(j.at("spec"));
          exp.threshold = number_from_json(j.at("threshold"));
          exp.n_list = j.at("n_list").get<std::vector<std::size_t>>();
          exp.samples = j.value("samples", std::size_t{10000});
          exp.seed = j.value("seed", std::uint64_t{0});
          if (j.value("direction", std::string("max")) == "min") exp.direction = TailDirection::MinBelow;
        } catch (const json::exception& e) {
          throw ParameterError(std::string("bad experiment JSON: ") + e.what());
        }
        if (std::getenv("SPECTRA_SEED") || app.count("--seed")) exp.seed = common.seed;
      } else {
        exp.spec = build_spec(mc_ens);
        exp.threshold = threshold;
        exp.n_list = n_list;
        exp.samples = mc_samples;
        exp.seed = common.seed;
        if (direction == "min") {
          exp.direction = TailDirection::MinBelow;
        } else if (direction != "max") {
          throw ParameterError("--direction must be max or min");
        }
      }
      exp.workers = common.workers;
      const McResult res = mc_tail_rate(exp);
      for (const std::string& w : res.warnings) err << "warning: " << w << "\n";
      emit(common, out, common.format == "json" ? json_text(to_json(res)) : to_csv(res));
      return 0;
    }

    if (*moments) {
      const MomentConstraint c =
          constraint_file.empty() ? MomentConstraint{cvals} : constraint_from_json(read_json_file(constraint_file));
      c.order();
      const json j = moments_result_json(c);
      if (csv) {
        emit(common, out, "primal,dual\n" + csv_line({number_from_json(j["primal"]), number_from_json(j["dual"])}));
      } else {
        emit(common, out, json_text(j));
      }
      return 0;
    }

    if (*probe) {
      ProbeReport r;
      if (probe_family == "laguerre") {
        TailJacobiModel model = probe_model.empty() ? TailJacobiModel::mp_tail(probe_tau, JacobiCoeffs{probe_b, probe_a})
                                                    : model_from_json(read_json_file(probe_model));
        r = conjecture_probe(model, LaguerreFamily{probe_tau});
      } else if (probe_family == "jacobi" || probe_family == "jacobi_kn") {
        r = conjecture_probe(VerblunskyCoeffs{probe_alpha}, JacobiKNFamily{pk1, pk2});
      } else {
        throw ParameterError("--family must be laguerre or jacobi");
      }
      if (csv) {
        emit(common, out, "coefficient_side,measure_side,gap\n" + csv_line({r.coefficient_side, r.measure_side, r.gap}));
      } else {
        emit(common, out, json_text(to_json(r)));
      }
      return 0;
    }

    if (*stats) {
      const EnsembleSpec spec = build_spec(stats_ens);
      const StatReport r = stat_suite(spec, common.seed, stat_samples, stat_alpha);
      if (csv) {
        std::string text = "test,statistic,p_value,passed\n";
        for (const StatTest& t : r.tests)
          text += t.name + "," + format_number(t.statistic) + "," + format_number(t.p_value) + "," +
                  (t.passed ? "1" : "0") + "\n";
        emit(common, out, text);
      } else {
        emit(common, out, json_text(to_json(r)));
      }
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  err << app.help();
  return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace spectra
