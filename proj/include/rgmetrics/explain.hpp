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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rgmetrics/safe_eval.hpp"

namespace rgm {

// Batch scalar prediction: rows in, one value per row out.
using PredictFn = std::function<Eigen::VectorXd(const Eigen::MatrixXd&)>;

// Monte Carlo permutation Shapley estimates.
//
// contributions(i, j): signed mean marginal contribution of feature group j
// to instance i over the sampled orderings. standard_errors(i, j) is the
// spread of those per-permutation contributions divided by sqrt(M), which
// is what "within k MC standard errors" statements are measured against.
// phi_bar aggregates |contributions| over instances; importance rescales
// phi_bar to percentages that sum to 100.
struct ShapleyResult {
  Eigen::MatrixXd contributions;
  Eigen::MatrixXd standard_errors;
  std::vector<double> phi_bar;
  std::vector<double> phi_bar_se;
  std::vector<double> importance;
  int permutations = 0;
  std::uint64_t seed = 0;
};

// Interventional (marginal-imputation) permutation sampling: for each
// instance and each of M orderings one background row is drawn, features
// are switched from the background value to the instance value in
// permutation order, and each group is credited with the prediction delta
// it causes. Grouped columns (a one-hot block) switch jointly. Each
// (instance, permutation) pair owns an RNG stream derived from the seed, so
// results do not depend on evaluation order.
ShapleyResult shapley_mc(const PredictFn& predict, const Eigen::MatrixXd& background,
                         const Eigen::MatrixXd& explain,
                         const std::vector<std::vector<std::size_t>>& groups, int permutations,
                         std::uint64_t seed);

// phi_bar -> percentages summing to 100. All-zero importances are an error.
std::vector<double> normalize_importance(std::span<const double> phi_bar);

// Combines per-target-dimension importance rows with the whitening lambda
// weights; preserves the sum-to-100 normalization.
std::vector<double> aggregate_multivariate_importance(
    const std::vector<std::vector<double>>& per_dimension, std::span<const double> lambdas);

// Average ranks (1-based) with ties sharing the mean of their positions.
// descending = true puts the largest score at rank 1.
std::vector<double> average_ranks(std::span<const double> scores, bool descending);

// Feature ranking by importance: rank 1 is the most important.
std::vector<double> rank_features(std::span<const double> importances);

// Spearman rank correlation 1 - 6 sum d^2 / (n (n^2 - 1)), with average
// ranks for ties. Invariant under strictly increasing transforms of either
// argument.
double spearman(std::span<const double> a, std::span<const double> b);

// Fold-wise Shapley study of a fitted pipeline model: per fold the model is
// trained on the training rows and the held-out rows are explained against
// the training background. Multivariate targets are explained per whitened
// dimension and aggregated with the lambda weights.
struct ShapleyAnalysis {
  std::vector<std::string> features;
  ModelKind model = ModelKind::kOls;
  std::vector<std::vector<double>> shapley_per_fold;     // folds x features, phi_bar
  std::vector<std::vector<double>> importance_per_fold;  // folds x features, percent
  std::vector<double> shapley_mean;
  std::vector<double> shapley_sd;
  std::vector<double> importance_mean;
  std::vector<double> importance_sd;
  int permutations = 50;
  std::uint64_t seed = 0;
};

ShapleyAnalysis run_shapley_analysis(const Dataset& data,
                                     const std::vector<std::string>& targets,
                                     const std::vector<std::string>& features, ModelKind kind,
                                     const PipelineConfig& config, int permutations = 50);

}  // namespace rgm
