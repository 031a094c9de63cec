/*
 * Copyright 2026 The rgmetrics Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// rgx: rank graduation metrics for model evaluation.
//
// Exit codes: 0 success, 2 usage/config, 3 data, 4 degenerate input,
// 5 filesystem, 1 anything else.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "rgmetrics/dataset.hpp"
#include "rgmetrics/divergences.hpp"
#include "rgmetrics/errors.hpp"
#include "rgmetrics/explain.hpp"
#include "rgmetrics/rank_core.hpp"
#include "rgmetrics/report.hpp"
#include "rgmetrics/rgx_metrics.hpp"
#include "rgmetrics/safe_eval.hpp"
#include "rgmetrics/synth.hpp"
#include "rgmetrics/whitening.hpp"

namespace {

using namespace rgm;

struct CommonOptions {
  std::string input;
  std::vector<std::string> categorical;
  double p = 1.0;
  std::uint64_t seed = 0;
  int folds = 5;
  double perturb_scale = 0.5;
};

Schema make_schema(const std::vector<std::string>& categorical) {
  Schema schema;
  for (const auto& name : categorical) schema[name] = ColumnKind::kCategorical;
  return schema;
}

std::vector<double> numeric_column(const Dataset& data, const std::string& name) {
  const Column& col = data.column(name);
  if (col.kind != ColumnKind::kContinuous) {
    throw DataError("column '" + name + "' is categorical, expected numeric");
  }
  return col.numeric;
}

// Response vectors honor the positivity requirement; shifting is explicit
// and always reported.
std::vector<double> maybe_shift(std::vector<double> values, bool allow_shift,
                                const std::string& role) {
  const auto shifted = shift_to_positive(values);
  if (shifted.shift == 0.0) return values;
  if (!allow_shift) {
    throw DegenerateError(role +
                          " contains non-positive values; rerun with "
                          "--shift-to-positive to apply a disclosed common shift");
  }
  std::printf("# applied shift %.12g to %s\n", shifted.shift, role.c_str());
  return shifted.values;
}

std::vector<std::string> default_features(const Dataset& data,
                                          const std::vector<std::string>& targets) {
  std::vector<std::string> features;
  for (const auto& name : data.column_names()) {
    bool is_target = false;
    for (const auto& t : targets) {
      if (t == name) is_target = true;
    }
    if (!is_target) features.push_back(name);
  }
  return features;
}

PipelineConfig pipeline_config(const CommonOptions& common, const std::string& models,
                               const std::string& scheme, bool whiten_full, int mlp_iter) {
  PipelineConfig config;
  config.folds = common.folds;
  config.p = common.p;
  config.perturb_scale = common.perturb_scale;
  config.seed = common.seed;
  config.scheme = whitening_scheme_from_string(scheme);
  config.whiten_full_data = whiten_full;
  config.mlp_max_iterations = mlp_iter;
  config.models.clear();
  std::stringstream stream(models);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) config.models.push_back(model_kind_from_string(token));
  }
  if (config.models.empty()) throw std::invalid_argument("no models selected");
  return config;
}

int run(int argc, char** argv) {
  CLI::App app{"Rank graduation metrics (RGX family) for model evaluation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "Key-value config file; command-line flags win");
  app.allow_config_extras(CLI::config_extras_mode::ignore_all);

  CommonOptions common;
  app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
  app.add_option("--p", common.p, "Metric order p > 0")->capture_default_str();
  app.add_option("--folds", common.folds, "Cross-validation folds")->capture_default_str();
  app.add_option("--perturb-scale", common.perturb_scale, "Perturbation scale")
      ->capture_default_str();
  app.add_option("--categorical", common.categorical,
                 "Columns to ingest as categorical")
      ->delimiter(',');

  // gini ------------------------------------------------------------------
  auto* gini_cmd = app.add_subcommand("gini", "Gini and Pietra indices of a column");
  std::string gini_column;
  bool gini_pietra = false;
  bool gini_shift = false;
  gini_cmd->add_option("--input", common.input, "CSV file")->required();
  gini_cmd->add_option("--column", gini_column, "Response column")->required();
  gini_cmd->add_flag("--pietra", gini_pietra, "Also print the Pietra index");
  gini_cmd->add_flag("--shift-to-positive", gini_shift,
                     "Shift non-positive responses (disclosed)");

  // rgx -------------------------------------------------------------------
  auto* rgx_cmd = app.add_subcommand("rgx", "RGX_p between a response and a score column");
  std::string rgx_y;
  std::string rgx_z;
  bool rgx_weighted = false;
  bool rgx_shift = false;
  rgx_cmd->add_option("--input", common.input, "CSV file")->required();
  rgx_cmd->add_option("--y", rgx_y, "Response column")->required();
  rgx_cmd->add_option("--z", rgx_z, "Score column (only its ordering matters)")->required();
  rgx_cmd->add_flag("--weighted", rgx_weighted, "Weighted metric (segments weighted by y)");
  rgx_cmd->add_flag("--shift-to-positive", rgx_shift,
                    "Shift non-positive responses (disclosed)");

  // cvm -------------------------------------------------------------------
  auto* cvm_cmd = app.add_subcommand("cvm", "Cramér-von Mises divergence between two columns");
  std::string cvm_x;
  std::string cvm_y;
  bool cvm_wasserstein = false;
  bool cvm_energy = false;
  bool cvm_verify = false;
  cvm_cmd->add_option("--input", common.input, "CSV file")->required();
  cvm_cmd->add_option("--x", cvm_x, "First sample column (integration measure)")->required();
  cvm_cmd->add_option("--y", cvm_y, "Second sample column")->required();
  cvm_cmd->add_flag("--wasserstein", cvm_wasserstein, "Also print W_p between the columns");
  cvm_cmd->add_flag("--energy", cvm_energy, "Also print the energy distance");
  cvm_cmd->add_flag("--verify", cvm_verify,
                    "Check CvM^{1/p} against W_p(U, concordance) and print the residual");

  // whiten ----------------------------------------------------------------
  auto* whiten_cmd = app.add_subcommand("whiten", "Fit a whitening transform to columns");
  std::vector<std::string> whiten_columns;
  std::string whiten_scheme = "zca-cor";
  std::string whiten_output;
  bool whiten_gini = false;
  whiten_cmd->add_option("--input", common.input, "CSV file")->required();
  whiten_cmd->add_option("--columns", whiten_columns, "Columns to whiten")
      ->required()
      ->delimiter(',');
  whiten_cmd->add_option("--scheme", whiten_scheme, "zca-cor or cholesky")
      ->capture_default_str();
  whiten_cmd->add_option("--output", whiten_output, "Write the transform (json)");
  whiten_cmd->add_flag("--gini", whiten_gini, "Also print the multivariate Gini index");

  // safe-eval ---------------------------------------------------------------
  auto* safe_cmd = app.add_subcommand(
      "safe-eval", "Cross-validated accuracy / robustness / explainability report");
  std::vector<std::string> safe_targets;
  std::vector<std::string> safe_features;
  std::string safe_models = "lm,nn";
  std::string safe_scheme = "zca-cor";
  std::string safe_output;
  bool safe_whiten_full = false;
  int safe_mlp_iter = 1000;
  safe_cmd->add_option("--input", common.input, "CSV file")->required();
  safe_cmd->add_option("--targets", safe_targets, "Target column(s)")
      ->required()
      ->delimiter(',');
  safe_cmd->add_option("--features", safe_features, "Feature columns (default: all others)")
      ->delimiter(',');
  safe_cmd->add_option("--models", safe_models, "Comma list of lm,nn")->capture_default_str();
  safe_cmd->add_option("--scheme", safe_scheme, "Whitening scheme (multivariate)")
      ->capture_default_str();
  safe_cmd->add_flag("--whiten-full-data", safe_whiten_full,
                     "Fit whitening on all rows instead of per training fold");
  safe_cmd->add_option("--mlp-iterations", safe_mlp_iter, "MLP training iterations")
      ->capture_default_str();
  safe_cmd->add_option("--output-dir", safe_output, "Directory for report files");

  // shapley -----------------------------------------------------------------
  auto* shap_cmd = app.add_subcommand("shapley", "Monte Carlo Shapley importances");
  std::vector<std::string> shap_targets;
  std::vector<std::string> shap_features;
  std::string shap_model = "lm";
  std::string shap_output;
  int shap_m = 50;
  int shap_mlp_iter = 1000;
  shap_cmd->add_option("--input", common.input, "CSV file")->required();
  shap_cmd->add_option("--targets", shap_targets, "Target column(s)")
      ->required()
      ->delimiter(',');
  shap_cmd->add_option("--features", shap_features, "Feature columns (default: all others)")
      ->delimiter(',');
  shap_cmd->add_option("--model", shap_model, "lm or nn")->capture_default_str();
  shap_cmd->add_option("--M", shap_m, "Permutations per instance")->capture_default_str();
  shap_cmd->add_option("--mlp-iterations", shap_mlp_iter, "MLP training iterations")
      ->capture_default_str();
  shap_cmd->add_option("--output-dir", shap_output, "Directory for result files");

  // spearman ----------------------------------------------------------------
  auto* spear_cmd = app.add_subcommand("spearman", "Spearman rank correlation");
  std::vector<double> spear_a;
  std::vector<double> spear_b;
  std::string spear_col_a;
  std::string spear_col_b;
  spear_cmd->add_option("--a", spear_a, "First score vector")->delimiter(',');
  spear_cmd->add_option("--b", spear_b, "Second score vector")->delimiter(',');
  spear_cmd->add_option("--input", common.input, "CSV file (use with --col-a/--col-b)");
  spear_cmd->add_option("--col-a", spear_col_a, "First column name");
  spear_cmd->add_option("--col-b", spear_col_b, "Second column name");

  // synth -------------------------------------------------------------------
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic benchmark dataset");
  SynthSpec spec;
  std::string synth_link = "linear";
  std::string synth_output;
  synth_cmd->add_option("--n", spec.n, "Rows")->capture_default_str();
  synth_cmd->add_option("--features", spec.n_features, "Continuous features")
      ->capture_default_str();
  synth_cmd->add_option("--irrelevant", spec.n_irrelevant,
                        "Trailing features with zero coefficient")
      ->capture_default_str();
  synth_cmd->add_option("--correlation", spec.correlation, "Feature equicorrelation")
      ->capture_default_str();
  synth_cmd->add_option("--link", synth_link, "linear or nonlinear")->capture_default_str();
  synth_cmd->add_option("--noise-sd", spec.noise_sd, "Index noise sd")->capture_default_str();
  synth_cmd->add_option("--targets", spec.n_targets, "Target count")->capture_default_str();
  synth_cmd->add_option("--sector-levels", spec.sector_levels,
                        "Categorical sector levels (0: none)")
      ->capture_default_str();
  synth_cmd->add_option("--output", synth_output, "Output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  const Schema schema = make_schema(common.categorical);

  if (gini_cmd->parsed()) {
    const Dataset data = ingest_csv(common.input, schema);
    const auto values =
        maybe_shift(numeric_column(data, gini_column), gini_shift, "column " + gini_column);
    const auto sample = RankedSample::from_values(values);
    std::printf("gini %.12g\n", gini(sample));
    if (gini_pietra) std::printf("pietra %.12g\n", pietra(sample));
    return 0;
  }

  if (rgx_cmd->parsed()) {
    const Dataset data = ingest_csv(common.input, schema);
    const auto y = maybe_shift(numeric_column(data, rgx_y), rgx_shift, "column " + rgx_y);
    const auto z = numeric_column(data, rgx_z);
    const auto sample = RankedSample::from_values(y);
    const RgxResult result =
        rgx_weighted ? wrgx_p(sample, z, common.p) : rgx_p(sample, z, common.p);
    std::printf("%s %.12g\n", rgx_weighted ? "wrgx_p" : "rgx_p", result.value);
    std::printf("p %.12g\nnumerator %.17g\ndenominator %.17g\n", result.p, result.numerator,
                result.denominator);
    return 0;
  }

  if (cvm_cmd->parsed()) {
    const Dataset data = ingest_csv(common.input, schema);
    const StepCDF x = StepCDF::from_sample(numeric_column(data, cvm_x));
    const StepCDF y = StepCDF::from_sample(numeric_column(data, cvm_y));
    std::printf("cvm_p %.12g\n", cvm_p(x, y, common.p));
    if (cvm_wasserstein) std::printf("wasserstein %.12g\n", wasserstein_1d(x, y, common.p));
    if (cvm_energy) std::printf("energy %.12g\n", energy_distance(x, y));
    if (cvm_verify) {
      const auto report = verify_cvm_wasserstein(x, y, common.p);
      std::printf("cvm_root %.12g\nwasserstein_uniform_concordance %.12g\nresidual %.12g\n",
                  report.cvm_root, report.wasserstein, report.residual);
    }
    return 0;
  }

  if (whiten_cmd->parsed()) {
    const Dataset data = ingest_csv(common.input, schema);
    std::vector<std::size_t> rows(data.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    const Eigen::MatrixXd matrix = target_matrix(data, whiten_columns, rows);
    const WhiteningTransform transform =
        fit_whitening(matrix, whitening_scheme_from_string(whiten_scheme));
    std::printf("scheme %s\n", to_string(transform.scheme).c_str());
    for (std::size_t j = 0; j < whiten_columns.size(); ++j) {
      std::printf("lambda[%s] %.12g\n", whiten_columns[j].c_str(),
                  transform.lambdas(static_cast<Eigen::Index>(j)));
    }
    if (whiten_gini) {
      const auto result = multivariate_gini(matrix, transform);
      std::printf("multivariate_gini %.12g\n", result.value);
      for (std::size_t j = 0; j < result.shifts.size(); ++j) {
        if (result.shifts[j] != 0.0) {
          std::printf("# applied shift %.12g to whitened %s\n", result.shifts[j],
                      whiten_columns[j].c_str());
        }
      }
    }
    if (!whiten_output.empty()) {
      save_transform(transform, whiten_output);
      std::printf("wrote %s\n", whiten_output.c_str());
    }
    return 0;
  }

  if (safe_cmd->parsed()) {
    const Dataset data = ingest_csv(common.input, schema);
    const auto features =
        safe_features.empty() ? default_features(data, safe_targets) : safe_features;
    const PipelineConfig config =
        pipeline_config(common, safe_models, safe_scheme, safe_whiten_full, safe_mlp_iter);
    const SafeReport report =
        safe_targets.size() == 1
            ? run_univariate_pipeline(data, safe_targets[0], features, config)
            : run_multivariate_pipeline(data, safe_targets, features, config);
    std::fputs(safe_report_table(report).c_str(), stdout);
    if (!safe_output.empty()) {
      for (const auto& path : emit_report(report, safe_output)) {
        std::printf("wrote %s\n", path.c_str());
      }
    }
    return 0;
  }

  if (shap_cmd->parsed()) {
    const Dataset data = ingest_csv(common.input, schema);
    const auto features =
        shap_features.empty() ? default_features(data, shap_targets) : shap_features;
    PipelineConfig config;
    config.folds = common.folds;
    config.seed = common.seed;
    config.mlp_max_iterations = shap_mlp_iter;
    const ShapleyAnalysis analysis = run_shapley_analysis(
        data, shap_targets, features, model_kind_from_string(shap_model), config, shap_m);
    std::fputs(shapley_table(analysis).c_str(), stdout);
    if (!shap_output.empty()) {
      for (const auto& path : emit_shapley(analysis, shap_output)) {
        std::printf("wrote %s\n", path.c_str());
      }
    }
    return 0;
  }

  if (spear_cmd->parsed()) {
    std::vector<double> a = spear_a;
    std::vector<double> b = spear_b;
    if (!spear_col_a.empty() || !spear_col_b.empty()) {
      if (common.input.empty()) {
        throw std::invalid_argument("spearman: --col-a/--col-b require --input");
      }
      const Dataset data = ingest_csv(common.input, schema);
      a = numeric_column(data, spear_col_a);
      b = numeric_column(data, spear_col_b);
    }
    std::printf("spearman %.12g\n", spearman(a, b));
    return 0;
  }

  if (synth_cmd->parsed()) {
    spec.link = synth_link_from_string(synth_link);
    spec.seed = common.seed;
    const Dataset data = synth_generate(spec);
    write_csv(data, synth_output);
    std::printf("wrote %s (%zu rows)\n", synth_output.c_str(), data.rows());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rgm::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const rgm::DegenerateError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 4;
  } catch (const rgm::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
