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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rgmetrics/dataset.hpp"
#include "rgmetrics/rgx_metrics.hpp"
#include "rgmetrics/whitening.hpp"

namespace rgm {

enum class ModelKind { kOls, kMlp };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct OlsParameters {
  Eigen::RowVectorXd intercept;  // 1 x d_out
  Eigen::MatrixXd coefficients;  // k x d_out
};

struct MlpParameters {
  Eigen::MatrixXd w1;  // k x hidden
  Eigen::RowVectorXd b1;
  Eigen::MatrixXd w2;  // hidden x d_out
  Eigen::RowVectorXd b2;
};

struct MlpConfig {
  int hidden = 5;
  int max_iterations = 1000;
  double learning_rate = 0.02;
  std::uint64_t seed = 0;
};

// A trained model behind a uniform predict surface. Parameters are fixed at
// fit time; predict is a pure function of them.
class ModelAdapter {
 public:
  ModelKind kind() const { return kind_; }
  Eigen::Index input_dim() const { return input_dim_; }
  Eigen::Index output_dim() const { return output_dim_; }
  double training_mse() const { return training_mse_; }

  Eigen::MatrixXd predict(const Eigen::MatrixXd& x) const;

  const OlsParameters& ols_parameters() const { return std::get<OlsParameters>(parameters_); }
  const MlpParameters& mlp_parameters() const { return std::get<MlpParameters>(parameters_); }

  static ModelAdapter make_ols(OlsParameters parameters, double training_mse);
  static ModelAdapter make_mlp(MlpParameters parameters, double training_mse);

 private:
  ModelKind kind_ = ModelKind::kOls;
  Eigen::Index input_dim_ = 0;
  Eigen::Index output_dim_ = 0;
  double training_mse_ = 0.0;
  std::variant<OlsParameters, MlpParameters> parameters_;
};

// Least squares with intercept via column-pivoted QR. Requires n > k + 1
// and a full-rank design.
ModelAdapter fit_ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

// Single hidden ReLU layer, linear output, full-batch gradient descent with
// per-parameter adaptive steps. Deterministic given the config seed.
ModelAdapter fit_mlp(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                     const MlpConfig& config);

namespace detail {
// Mean squared error over all entries and its parameter gradients; exposed
// so tests can check the analytic gradients against finite differences.
double mlp_loss_and_gradients(const MlpParameters& params, const Eigen::MatrixXd& x,
                              const Eigen::MatrixXd& y, MlpParameters* gradients);
}  // namespace detail

// Deterministic disjoint covering folds with sizes differing by at most 1.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, int k, std::uint64_t seed);

// Gaussian prediction noise scaled by the sample sd of the predictions.
// A constant prediction vector has no scale; it is returned untouched with
// the degenerate flag raised.
struct PerturbResult {
  std::vector<double> values;
  double sigma = 0.0;  // sd of the injected noise: scale * sd(predictions)
  bool degenerate = false;
};
PerturbResult perturb(std::span<const double> predictions, double scale, std::uint64_t seed);

// RGX_p with the argument roles of the three SAFE readings. Responses that
// fail the positivity requirement receive a disclosed common shift.
struct MetricOutcome {
  double value = 0.0;
  double shift = 0.0;
  RgxResult details;
};
MetricOutcome rga(std::span<const double> y_true, std::span<const double> y_pred, double p);
MetricOutcome rgr(std::span<const double> y_pred, std::span<const double> y_pred_perturbed,
                  double p);

// RGE is reported as a contribution: 1 - RGX_p(full, reduced), so removing
// an irrelevant feature scores ~0 and removing a load-bearing one scores
// high. The raw concordance is kept for audits.
struct RgeOutcome {
  double contribution = 0.0;
  double concordance = 0.0;  // raw RGX_p(full, reduced)
  double shift = 0.0;
};
RgeOutcome rge(std::span<const double> y_pred_full, std::span<const double> y_pred_reduced,
               double p);

struct PipelineConfig {
  int folds = 5;
  double p = 1.0;
  double perturb_scale = 0.5;
  std::uint64_t seed = 0;
  std::vector<ModelKind> models = {ModelKind::kOls, ModelKind::kMlp};
  int mlp_hidden_univariate = 5;
  int mlp_hidden_multivariate = 10;
  int mlp_max_iterations = 1000;
  double mlp_learning_rate = 0.02;
  WhiteningScheme scheme = WhiteningScheme::kZcaCor;
  bool whiten_full_data = false;  // default: fit whitening per training fold
};

struct MetricSummary {
  std::string name;
  std::vector<double> per_fold;
  double mean = 0.0;
  double sd = 0.0;  // sample sd across folds

  bool operator==(const MetricSummary&) const = default;
};

struct ModelReport {
  ModelKind kind = ModelKind::kOls;
  std::vector<MetricSummary> metrics;

  bool operator==(const ModelReport&) const = default;
};

// One disclosed positivity shift (fold / model / metric it was applied to).
struct ShiftRecord {
  int fold = 0;
  std::string model;
  std::string metric;
  double shift = 0.0;

  bool operator==(const ShiftRecord&) const = default;
};

struct SafeReport {
  double p = 1.0;
  std::uint64_t seed = 0;
  int folds = 5;
  double perturb_scale = 0.5;
  std::string whitening = "none";
  std::string sd_convention = "sample (n-1)";
  std::vector<std::string> targets;
  std::vector<std::string> features;
  std::vector<std::vector<double>> lambdas_per_fold;
  std::vector<ShiftRecord> shifts;
  std::vector<ModelReport> models;

  bool operator==(const SafeReport&) const = default;
};

// Five-fold SAFE evaluation of one continuous target: per fold, fit on the
// training rows, score accuracy against the held-out truth, robustness
// against a perturbed copy of the predictions, and per-feature
// explainability against leave-one-feature-out refits.
SafeReport run_univariate_pipeline(const Dataset& data, const std::string& target,
                                   const std::vector<std::string>& features,
                                   const PipelineConfig& config);

// Joint evaluation of several targets: targets are whitened per training
// fold (same matrix applied to truths and predictions) and per-dimension
// metrics are combined with the lambda weights.
SafeReport run_multivariate_pipeline(const Dataset& data,
                                     const std::vector<std::string>& targets,
                                     const std::vector<std::string>& features,
                                     const PipelineConfig& config);

}  // namespace rgm
