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

#include "rgmetrics/explain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rgmetrics/errors.hpp"
#include "rgmetrics/rng.hpp"

namespace rgm {

ShapleyResult shapley_mc(const PredictFn& predict, const Eigen::MatrixXd& background,
                         const Eigen::MatrixXd& explain,
                         const std::vector<std::vector<std::size_t>>& groups, int permutations,
                         std::uint64_t seed) {
  if (background.rows() == 0) {
    throw std::invalid_argument("shapley_mc: empty background set");
  }
  if (permutations < 1) throw std::invalid_argument("shapley_mc: need M >= 1");
  if (background.cols() != explain.cols()) {
    throw std::invalid_argument("shapley_mc: background and explain widths differ");
  }
  const auto g = groups.size();
  if (g == 0) throw std::invalid_argument("shapley_mc: no feature groups");

  const auto n = explain.rows();
  const auto m = static_cast<std::size_t>(permutations);

  ShapleyResult result;
  result.permutations = permutations;
  result.seed = seed;
  result.contributions = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(g));
  result.standard_errors = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(g));

  std::vector<std::size_t> order(g);
  for (Eigen::Index i = 0; i < n; ++i) {
    // One batch per instance: M walks of g+1 partially switched rows.
    Eigen::MatrixXd batch(static_cast<Eigen::Index>(m * (g + 1)), explain.cols());
    std::vector<std::vector<std::size_t>> orders(m);
    for (std::size_t perm = 0; perm < m; ++perm) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i), perm));
      const std::size_t pick = rng.below(static_cast<std::size_t>(background.rows()));
      std::iota(order.begin(), order.end(), std::size_t{0});
      rng.shuffle(order);
      orders[perm] = order;

      Eigen::RowVectorXd current = background.row(static_cast<Eigen::Index>(pick));
      const auto base = static_cast<Eigen::Index>(perm * (g + 1));
      batch.row(base) = current;
      for (std::size_t step = 0; step < g; ++step) {
        for (std::size_t col : groups[order[step]]) {
          current(static_cast<Eigen::Index>(col)) = explain(i, static_cast<Eigen::Index>(col));
        }
        batch.row(base + static_cast<Eigen::Index>(step) + 1) = current;
      }
    }
    const Eigen::VectorXd values = predict(batch);

    // Welford-free accumulation: mean and raw second moment per group.
    std::vector<double> sum(g, 0.0);
    std::vector<double> sum_sq(g, 0.0);
    for (std::size_t perm = 0; perm < m; ++perm) {
      const auto base = static_cast<Eigen::Index>(perm * (g + 1));
      for (std::size_t step = 0; step < g; ++step) {
        const double delta = values(base + static_cast<Eigen::Index>(step) + 1) -
                             values(base + static_cast<Eigen::Index>(step));
        const std::size_t group = orders[perm][step];
        sum[group] += delta;
        sum_sq[group] += delta * delta;
      }
    }
    for (std::size_t group = 0; group < g; ++group) {
      const double mean = sum[group] / static_cast<double>(m);
      result.contributions(i, static_cast<Eigen::Index>(group)) = mean;
      if (m > 1) {
        const double var =
            std::max(0.0, (sum_sq[group] - static_cast<double>(m) * mean * mean) /
                              static_cast<double>(m - 1));
        result.standard_errors(i, static_cast<Eigen::Index>(group)) =
            std::sqrt(var / static_cast<double>(m));
      }
    }
  }

  result.phi_bar.resize(g);
  result.phi_bar_se.resize(g);
  for (std::size_t group = 0; group < g; ++group) {
    double acc = 0.0;
    double se_acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      acc += std::abs(result.contributions(i, static_cast<Eigen::Index>(group)));
      const double se = result.standard_errors(i, static_cast<Eigen::Index>(group));
      se_acc += se * se;
    }
    result.phi_bar[group] = acc / static_cast<double>(n);
    result.phi_bar_se[group] = std::sqrt(se_acc) / static_cast<double>(n);
  }
  // A constant model has no importances to normalize; leave them empty
  // rather than imputing a split.
  double total = 0.0;
  for (double v : result.phi_bar) total += v;
  if (total > 0.0) result.importance = normalize_importance(result.phi_bar);
  return result;
}

std::vector<double> normalize_importance(std::span<const double> phi_bar) {
  double total = 0.0;
  for (double v : phi_bar) {
    if (v < 0.0) throw std::invalid_argument("normalize_importance: negative magnitude");
    total += v;
  }
  if (!(total > 0.0)) {
    throw DegenerateError("normalize_importance: all importances are zero");
  }
  std::vector<double> out(phi_bar.size());
  for (std::size_t j = 0; j < phi_bar.size(); ++j) out[j] = phi_bar[j] / total * 100.0;
  return out;
}

std::vector<double> aggregate_multivariate_importance(
    const std::vector<std::vector<double>>& per_dimension, std::span<const double> lambdas) {
  if (per_dimension.size() != lambdas.size()) {
    throw std::invalid_argument("aggregate_multivariate_importance: dimension count mismatch");
  }
  if (per_dimension.empty()) {
    throw std::invalid_argument("aggregate_multivariate_importance: no dimensions");
  }
  const std::size_t width = per_dimension.front().size();
  std::vector<double> out(width, 0.0);
  for (std::size_t k = 0; k < per_dimension.size(); ++k) {
    if (per_dimension[k].size() != width) {
      throw std::invalid_argument("aggregate_multivariate_importance: ragged rows");
    }
    for (std::size_t j = 0; j < width; ++j) out[j] += lambdas[k] * per_dimension[k][j];
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> scores, bool descending) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    // positions i..j (0-based) share the average 1-based rank
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::vector<double> rank_features(std::span<const double> importances) {
  for (double v : importances) {
    if (!std::isfinite(v)) throw std::invalid_argument("rank_features: non-finite importance");
  }
  return average_ranks(importances, /*descending=*/true);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("spearman: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("spearman: need at least 2 entries");
  const std::vector<double> ra = average_ranks(a, /*descending=*/false);
  const std::vector<double> rb = average_ranks(b, /*descending=*/false);
  const auto n = static_cast<double>(a.size());
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = ra[i] - rb[i];
    sum_sq += d * d;
  }
  return 1.0 - 6.0 * sum_sq / (n * (n * n - 1.0));
}

namespace {

std::vector<std::size_t> complement_rows(std::size_t n, const std::vector<std::size_t>& fold) {
  std::vector<bool> in_fold(n, false);
  for (std::size_t r : fold) in_fold[r] = true;
  std::vector<std::size_t> rows;
  rows.reserve(n - fold.size());
  for (std::size_t r = 0; r < n; ++r) {
    if (!in_fold[r]) rows.push_back(r);
  }
  return rows;
}

void mean_sd_columns(const std::vector<std::vector<double>>& rows, std::vector<double>& mean,
                     std::vector<double>& sd) {
  const std::size_t folds = rows.size();
  const std::size_t width = rows.front().size();
  mean.assign(width, 0.0);
  sd.assign(width, 0.0);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < width; ++j) mean[j] += row[j];
  }
  for (std::size_t j = 0; j < width; ++j) mean[j] /= static_cast<double>(folds);
  if (folds > 1) {
    for (const auto& row : rows) {
      for (std::size_t j = 0; j < width; ++j) {
        const double d = row[j] - mean[j];
        sd[j] += d * d;
      }
    }
    for (std::size_t j = 0; j < width; ++j) {
      sd[j] = std::sqrt(sd[j] / static_cast<double>(folds - 1));
    }
  }
}

}  // namespace

ShapleyAnalysis run_shapley_analysis(const Dataset& data,
                                     const std::vector<std::string>& targets,
                                     const std::vector<std::string>& features, ModelKind kind,
                                     const PipelineConfig& config, int permutations) {
  if (targets.empty()) throw std::invalid_argument("run_shapley_analysis: no targets");

  ShapleyAnalysis analysis;
  analysis.features = features;
  analysis.model = kind;
  analysis.permutations = permutations;
  analysis.seed = config.seed;

  const std::size_t n = data.rows();
  const auto folds = kfold_split(n, config.folds, config.seed);
  const bool multivariate = targets.size() > 1;
  const bool linear = kind == ModelKind::kOls;

  for (std::size_t fold = 0; fold < folds.size(); ++fold) {
    const auto& test_rows = folds[fold];
    const auto train_rows = complement_rows(n, test_rows);

    const FeatureEncoder encoder = FeatureEncoder::fit(data, features, train_rows, linear, linear);
    const Eigen::MatrixXd x_train = encoder.encode(data, train_rows);
    const Eigen::MatrixXd x_test = encoder.encode(data, test_rows);
    const Eigen::MatrixXd y_train = target_matrix(data, targets, train_rows);

    MlpConfig mlp;
    mlp.hidden = multivariate ? config.mlp_hidden_multivariate : config.mlp_hidden_univariate;
    mlp.max_iterations = config.mlp_max_iterations;
    mlp.learning_rate = config.mlp_learning_rate;
    mlp.seed = derive_seed(config.seed, fold, static_cast<std::uint64_t>(kind), 100);
    const ModelAdapter model =
        linear ? fit_ols(x_train, y_train) : fit_mlp(x_train, y_train, mlp);

    const std::uint64_t fold_seed =
        derive_seed(config.seed, fold, static_cast<std::uint64_t>(kind), 400);

    if (!multivariate) {
      const PredictFn scalar = [&model](const Eigen::MatrixXd& rows) {
        return Eigen::VectorXd(model.predict(rows).col(0));
      };
      const ShapleyResult result =
          shapley_mc(scalar, x_train, x_test, encoder.groups(), permutations, fold_seed);
      analysis.shapley_per_fold.push_back(result.phi_bar);
      analysis.importance_per_fold.push_back(result.importance);
    } else {
      const WhiteningTransform transform = fit_whitening(y_train, config.scheme);
      std::vector<std::vector<double>> importance_rows;
      std::vector<std::vector<double>> shapley_rows;
      for (Eigen::Index dim = 0; dim < transform.matrix.rows(); ++dim) {
        const Eigen::VectorXd projection = transform.matrix.row(dim);
        const PredictFn scalar = [&model, &projection](const Eigen::MatrixXd& rows) {
          return Eigen::VectorXd(model.predict(rows) * projection);
        };
        const ShapleyResult result = shapley_mc(
            scalar, x_train, x_test, encoder.groups(), permutations,
            derive_seed(fold_seed, static_cast<std::uint64_t>(dim)));
        importance_rows.push_back(result.importance);
        shapley_rows.push_back(result.phi_bar);
      }
      const std::vector<double> lambdas(transform.lambdas.begin(), transform.lambdas.end());
      analysis.importance_per_fold.push_back(
          aggregate_multivariate_importance(importance_rows, lambdas));
      analysis.shapley_per_fold.push_back(
          aggregate_multivariate_importance(shapley_rows, lambdas));
    }
  }

  mean_sd_columns(analysis.shapley_per_fold, analysis.shapley_mean, analysis.shapley_sd);
  mean_sd_columns(analysis.importance_per_fold, analysis.importance_mean,
                  analysis.importance_sd);
  return analysis;
}

}  // namespace rgm
