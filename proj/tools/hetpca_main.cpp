// Command-line harness: closed-form predictions, single simulation trials
// and Monte Carlo parameter sweeps with CSV/JSON output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hetpca/asymptotics.hpp"
#include "hetpca/dataset_io.hpp"
#include "hetpca/pca.hpp"
#include "hetpca/simulate.hpp"
#include "hetpca/sweep.hpp"

namespace {

using nlohmann::json;

struct PredictArgs {
  double c = 0.0;
  std::vector<double> thetas;
  std::vector<double> variances;
  std::vector<double> proportions;
};

hetpca::NoiseProfile make_profile(const std::vector<double>& variances,
                                  std::vector<double> proportions) {
  if (proportions.empty()) {
    proportions.assign(variances.size(), 1.0 / static_cast<double>(variances.size()));
  }
  return hetpca::NoiseProfile(variances, std::move(proportions));
}

json component_to_json(double theta, const hetpca::ComponentPrediction& p,
                       const hetpca::RecoveryBounds& bounds) {
  return json{{"theta", theta},
              {"alpha", p.alpha},
              {"beta", p.beta},
              {"a_at_beta", p.a_at_beta},
              {"above_transition", p.above_transition},
              {"conjectured_zero", p.conjectured_zero},
              {"amplitude_sq_limit", p.amplitude_sq_limit},
              {"amplitude_sq_ratio", p.amplitude_sq_ratio},
              {"subspace_recovery", p.subspace_recovery},
              {"coefficient_recovery", p.coefficient_recovery},
              {"mixed_recovery", p.mixed_recovery},
              {"bounds",
               {{"amplitude_sq_ratio_lower", bounds.amplitude_sq_ratio_lower},
                {"subspace_upper", bounds.subspace_upper},
                {"coefficient_upper", bounds.coefficient_upper}}}};
}

std::optional<double> inverse_variance_or_null(const hetpca::NoiseProfile& noise) {
  if (noise.min_variance() <= 0.0) return std::nullopt;
  return hetpca::average_inverse_variance(noise);
}

int run_predict(const PredictArgs& args, bool as_json, std::ostream& out) {
  const auto noise = make_profile(args.variances, args.proportions);
  const auto preds = hetpca::predict_components(args.c, args.thetas, noise);
  const auto inv = inverse_variance_or_null(noise);

  bool all_above = true;
  for (const auto& p : preds) all_above = all_above && p.above_transition;
  std::optional<hetpca::OverallPrediction> overall;
  if (all_above) {
    std::vector<double> amp_sq;
    for (double t : args.thetas) amp_sq.push_back(t * t);
    overall = hetpca::predict_overall(args.c, amp_sq, noise);
  }

  if (as_json) {
    json doc{{"c", args.c},
             {"variances", noise.variances()},
             {"proportions", noise.proportions()},
             {"avg_variance", noise.average_variance()},
             {"avg_inverse_variance", inv ? json(*inv) : json(nullptr)},
             {"components", json::array()}};
    for (std::size_t i = 0; i < preds.size(); ++i) {
      const auto bounds =
          hetpca::homoscedastic_bounds(args.c, args.thetas[i] * args.thetas[i], noise);
      doc["components"].push_back(component_to_json(args.thetas[i], preds[i], bounds));
    }
    if (overall) {
      doc["overall"] = {{"mean_subspace_recovery", overall->mean_subspace_recovery},
                        {"mse", overall->mse}};
    }
    out << doc.dump(2) << "\n";
    return 0;
  }

  out << "c = " << args.c << ", avg variance = " << noise.average_variance();
  if (inv) {
    out << ", avg inverse variance = " << *inv;
  } else {
    out << ", avg inverse variance = n/a (zero variance present)";
  }
  out << "\n";
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto& p = preds[i];
    const auto bounds =
        hetpca::homoscedastic_bounds(args.c, args.thetas[i] * args.thetas[i], noise);
    out << "component " << i + 1 << " (theta = " << args.thetas[i] << ")\n";
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "  alpha = %.10g  beta = %.10g  A(beta) = %.10g  [%s]\n", p.alpha,
                  p.beta, p.a_at_beta,
                  p.above_transition ? "above transition"
                                     : "below transition, recoveries conjectured 0");
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "  amplitude_sq_limit = %.10g  (ratio %.10g, lower bound %.10g)\n",
                  p.amplitude_sq_limit, p.amplitude_sq_ratio,
                  bounds.amplitude_sq_ratio_lower);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "  subspace = %.10g (<= %.10g)  coefficient = %.10g (<= %.10g)  "
                  "mixed = %.10g\n",
                  p.subspace_recovery, bounds.subspace_upper, p.coefficient_recovery,
                  bounds.coefficient_upper, p.mixed_recovery);
    out << buf;
  }
  if (overall) {
    out << "overall: mean subspace recovery = " << overall->mean_subspace_recovery
        << ", mse = " << overall->mse << "\n";
  }
  return 0;
}

struct SimulateArgs {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::vector<double> thetas;
  std::vector<double> variances;
  std::vector<double> proportions;
  std::string field = "real";
  std::string coeff_dist = "gaussian";
  std::string assignment = "deterministic";
  std::uint64_t seed = 0;
  bool debug_retain = false;
  std::string export_path;
};

int run_simulate(const SimulateArgs& args, bool as_json, std::ostream& out) {
  hetpca::DatasetSpec spec;
  spec.n = args.n;
  spec.d = args.d;
  spec.amplitudes = args.thetas;
  spec.noise = make_profile(args.variances, args.proportions);
  spec.field = hetpca::field_from_string(args.field);
  spec.coeff_dist = hetpca::coeff_dist_from_string(args.coeff_dist);
  spec.assignment = hetpca::assignment_from_string(args.assignment);
  spec.seed = args.seed;
  spec.retain_noise = args.debug_retain;
  spec.validate();

  if (!args.export_path.empty()) {
    if (spec.field == hetpca::Field::Real) {
      hetpca::export_dataset(hetpca::generate<double>(spec), args.export_path);
    } else {
      hetpca::export_dataset(hetpca::generate<std::complex<double>>(spec),
                             args.export_path);
    }
  }

  const auto metrics = hetpca::run_trial(spec);
  // finite-sample prediction: c = n/d, realized per-level proportions
  const double c = static_cast<double>(spec.n) / static_cast<double>(spec.d);
  const auto pred_noise = hetpca::effective_noise_profile(spec, /*realized_counts=*/true);
  const auto preds = hetpca::predict_components(c, spec.amplitudes, pred_noise);

  if (as_json) {
    json doc{{"n", spec.n},
             {"d", spec.d},
             {"c", c},
             {"seed", spec.seed},
             {"field", hetpca::to_string(spec.field)},
             {"assignment", hetpca::to_string(spec.assignment)},
             {"components", json::array()},
             {"mse", metrics.mse},
             {"overall_subspace", metrics.overall_subspace}};
    for (std::size_t i = 0; i < metrics.components.size(); ++i) {
      const auto& m = metrics.components[i];
      const auto& p = preds[i];
      doc["components"].push_back(
          json{{"theta", spec.amplitudes[i]},
               {"empirical",
                {{"subspace_sq_cos", m.subspace_sq_cos},
                 {"subspace_sq_cos_other", m.subspace_sq_cos_other},
                 {"coeff_sq_cos", m.coeff_sq_cos},
                 {"coeff_sq_cos_other", m.coeff_sq_cos_other},
                 {"mixed_real", m.mixed_real},
                 {"mixed_imag_abs", m.mixed_imag_abs},
                 {"amplitude_ratio", m.amplitude_ratio}}},
               {"asymptotic",
                {{"subspace_recovery", p.subspace_recovery},
                 {"coefficient_recovery", p.coefficient_recovery},
                 {"mixed_recovery", p.mixed_recovery},
                 {"amplitude_sq_ratio", p.amplitude_sq_ratio},
                 {"above_transition", p.above_transition}}}});
    }
    out << doc.dump(2) << "\n";
    return 0;
  }

  out << "n = " << spec.n << ", d = " << spec.d << ", c = " << c
      << ", seed = " << spec.seed << "\n";
  for (std::size_t i = 0; i < metrics.components.size(); ++i) {
    const auto& m = metrics.components[i];
    const auto& p = preds[i];
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "component %zu: subspace %.6f (asym %.6f)  coefficient %.6f (asym "
                  "%.6f)  mixed %.6f (asym %.6f)  amp ratio %.6f (asym %.6f)\n",
                  i + 1, m.subspace_sq_cos, p.subspace_recovery, m.coeff_sq_cos,
                  p.coefficient_recovery, m.mixed_real, p.mixed_recovery,
                  m.amplitude_ratio, p.amplitude_sq_ratio);
    out << buf;
  }
  out << "mse = " << metrics.mse << ", overall subspace = " << metrics.overall_subspace
      << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymptotic PCA performance under heteroscedastic noise"};
  app.require_subcommand(1);
  // let the global flags (--json, --out, ...) appear after the subcommand
  app.fallthrough();

  std::string out_path;
  bool as_json = false;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  std::string config_path;
  std::uint64_t global_seed = 0;
  bool seed_given = false;

  app.add_option("--out", out_path, "write output to this path instead of stdout");
  app.add_flag("--json", as_json, "emit JSON instead of a table");
  app.add_option("--threads", threads, "worker threads for sweep trials");
  app.add_option("--seed", global_seed, "seed (simulate) / master seed (sweep)")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--config", config_path, "JSON config file (sweep)");

  PredictArgs pargs;
  auto* predict = app.add_subcommand("predict", "closed-form asymptotic predictions");
  predict->add_option("--c", pargs.c, "sample-to-dimension ratio")->required();
  predict->add_option("--theta", pargs.thetas, "subspace amplitude (repeatable)")
      ->required();
  predict->add_option("--sigma2", pargs.variances, "noise variance (repeatable)")
      ->required();
  predict->add_option("--p", pargs.proportions,
                      "noise proportion (repeatable, default uniform)");

  SimulateArgs sargs;
  auto* simulate = app.add_subcommand("simulate", "one seeded simulation trial");
  simulate->add_option("--n", sargs.n, "number of samples")->required();
  simulate->add_option("--d", sargs.d, "ambient dimension")->required();
  simulate->add_option("--theta", sargs.thetas, "subspace amplitude (repeatable)")
      ->required();
  simulate->add_option("--sigma2", sargs.variances, "noise variance (repeatable)")
      ->required();
  simulate->add_option("--p", sargs.proportions,
                       "noise proportion (repeatable, default uniform)");
  simulate->add_option("--field", sargs.field, "real | complex");
  simulate->add_option("--coeff-dist", sargs.coeff_dist, "gaussian | rademacher");
  simulate->add_option("--assignment", sargs.assignment,
                       "deterministic | random-iid | johnstone-spiked | "
                       "mixture-homoscedastic");
  simulate->add_flag("--debug-retain", sargs.debug_retain,
                     "retain the unscaled noise matrix");
  simulate->add_option("--export", sargs.export_path,
                       "export the dataset (binary + JSON sidecar)");

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo parameter sweep to CSV");
  int sweep_trials = -1;
  std::int64_t sweep_n = -1;
  std::int64_t sweep_d = -1;
  sweep->add_option("--trials", sweep_trials, "override trials per point");
  sweep->add_option("--n", sweep_n, "override base sample count");
  sweep->add_option("--d", sweep_d, "override ambient dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
      file_out.open(out_path);
      if (!file_out) {
        std::cerr << "error: cannot open output path: " << out_path << "\n";
        return 1;
      }
      out = &file_out;
    }

    if (predict->parsed()) {
      return run_predict(pargs, as_json, *out);
    }
    if (simulate->parsed()) {
      if (seed_given) sargs.seed = global_seed;
      return run_simulate(sargs, as_json, *out);
    }
    if (sweep->parsed()) {
      if (config_path.empty()) {
        std::cerr << "error: sweep requires --config <file>\n";
        return 2;
      }
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot read config: " << config_path << "\n";
        return 1;
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      auto config = hetpca::parse_sweep_config(buffer.str());
      if (sweep_trials > 0) config.trials = sweep_trials;
      if (sweep_n > 0) config.n = sweep_n;
      if (sweep_d > 0) config.d = sweep_d;
      if (seed_given) config.master_seed = global_seed;
      config.validate();
      const auto rows = hetpca::run_sweep(config, threads);
      hetpca::write_csv(rows, *out);
      out->flush();
      if (!*out) {
        std::cerr << "error: write failed\n";
        return 1;
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
