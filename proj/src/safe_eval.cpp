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

#include "rgmetrics/safe_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rgmetrics/errors.hpp"
#include "rgmetrics/rng.hpp"

namespace rgm {

std::string to_string(ModelKind kind) { return kind == ModelKind::kOls ? "lm" : "nn"; }

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "lm" || name == "ols" || name == "linear") return ModelKind::kOls;
  if (name == "nn" || name == "mlp") return ModelKind::kMlp;
  throw std::invalid_argument("unknown model kind '" + name + "' (expected lm or nn)");
}

Eigen::MatrixXd ModelAdapter::predict(const Eigen::MatrixXd& x) const {
  if (x.cols() != input_dim_) {
    throw std::invalid_argument("ModelAdapter::predict: expected " +
                                std::to_string(input_dim_) + " features, got " +
                                std::to_string(x.cols()));
  }
  if (kind_ == ModelKind::kOls) {
    const auto& p = std::get<OlsParameters>(parameters_);
    return (x * p.coefficients).rowwise() + p.intercept;
  }
  const auto& p = std::get<MlpParameters>(parameters_);
  const Eigen::MatrixXd hidden = ((x * p.w1).rowwise() + p.b1).cwiseMax(0.0);
  return (hidden * p.w2).rowwise() + p.b2;
}

ModelAdapter ModelAdapter::make_ols(OlsParameters parameters, double training_mse) {
  ModelAdapter m;
  m.kind_ = ModelKind::kOls;
  m.input_dim_ = parameters.coefficients.rows();
  m.output_dim_ = parameters.coefficients.cols();
  m.training_mse_ = training_mse;
  m.parameters_ = std::move(parameters);
  return m;
}

ModelAdapter ModelAdapter::make_mlp(MlpParameters parameters, double training_mse) {
  ModelAdapter m;
  m.kind_ = ModelKind::kMlp;
  m.input_dim_ = parameters.w1.rows();
  m.output_dim_ = parameters.w2.cols();
  m.training_mse_ = training_mse;
  m.parameters_ = std::move(parameters);
  return m;
}

ModelAdapter fit_ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  if (y.rows() != n) throw std::invalid_argument("fit_ols: x and y row counts differ");
  if (n <= k + 1) {
    throw std::invalid_argument("fit_ols: need more than " + std::to_string(k + 1) +
                                " rows for " + std::to_string(k) + " features");
  }

  Eigen::MatrixXd design(n, k + 1);
  design.col(0).setOnes();
  design.rightCols(k) = x;

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < k + 1) {
    throw DegenerateError("fit_ols: design matrix is rank deficient (rank " +
                          std::to_string(qr.rank()) + " of " + std::to_string(k + 1) + ")");
  }
  const Eigen::MatrixXd beta = qr.solve(y);

  OlsParameters params;
  params.intercept = beta.row(0);
  params.coefficients = beta.bottomRows(k);
  const double mse = (design * beta - y).squaredNorm() / static_cast<double>(y.size());
  return ModelAdapter::make_ols(std::move(params), mse);
}

namespace detail {

double mlp_loss_and_gradients(const MlpParameters& params, const Eigen::MatrixXd& x,
                              const Eigen::MatrixXd& y, MlpParameters* gradients) {
  const auto n = static_cast<double>(y.size());
  const Eigen::MatrixXd pre = (x * params.w1).rowwise() + params.b1;
  const Eigen::MatrixXd hidden = pre.cwiseMax(0.0);
  const Eigen::MatrixXd out = (hidden * params.w2).rowwise() + params.b2;
  const Eigen::MatrixXd err = out - y;
  const double loss = err.squaredNorm() / n;
  if (gradients != nullptr) {
    const Eigen::MatrixXd g_out = 2.0 * err / n;
    gradients->w2 = hidden.transpose() * g_out;
    gradients->b2 = g_out.colwise().sum();
    const Eigen::MatrixXd mask = (pre.array() > 0.0).cast<double>();
    const Eigen::MatrixXd g_pre = (g_out * params.w2.transpose()).cwiseProduct(mask);
    gradients->w1 = x.transpose() * g_pre;
    gradients->b1 = g_pre.colwise().sum();
  }
  return loss;
}

}  // namespace detail

ModelAdapter fit_mlp(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                     const MlpConfig& config) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  const Eigen::Index d = y.cols();
  if (y.rows() != n) throw std::invalid_argument("fit_mlp: x and y row counts differ");
  if (config.hidden < 1) throw std::invalid_argument("fit_mlp: hidden size must be >= 1");
  if (config.max_iterations < 1) throw std::invalid_argument("fit_mlp: need >= 1 iteration");

  Rng rng(config.seed);
  const auto h = static_cast<Eigen::Index>(config.hidden);
  MlpParameters params;
  params.w1.resize(k, h);
  params.b1 = Eigen::RowVectorXd::Zero(h);
  params.w2.resize(h, d);
  params.b2 = Eigen::RowVectorXd::Zero(d);
  const double scale1 = 1.0 / std::sqrt(static_cast<double>(k));
  const double scale2 = 1.0 / std::sqrt(static_cast<double>(h));
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < h; ++j) params.w1(i, j) = (2.0 * rng.uniform() - 1.0) * scale1;
  }
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) params.w2(i, j) = (2.0 * rng.uniform() - 1.0) * scale2;
  }

  const double initial_loss = detail::mlp_loss_and_gradients(params, x, y, nullptr);

  // Adam-style per-parameter steps, full batch.
  const double beta1 = 0.9;
  const double beta2 = 0.999;
  const double eps = 1e-8;
  MlpParameters grads;
  MlpParameters m;  // first moments
  MlpParameters v;  // second moments
  m.w1 = Eigen::MatrixXd::Zero(k, h);
  m.b1 = Eigen::RowVectorXd::Zero(h);
  m.w2 = Eigen::MatrixXd::Zero(h, d);
  m.b2 = Eigen::RowVectorXd::Zero(d);
  v = m;

  double loss = initial_loss;
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    loss = detail::mlp_loss_and_gradients(params, x, y, &grads);
    if (!std::isfinite(loss)) {
      throw std::runtime_error("fit_mlp: loss became non-finite at iteration " +
                               std::to_string(iter) + "; lower the learning rate");
    }
    const double correction1 = 1.0 - std::pow(beta1, iter);
    const double correction2 = 1.0 - std::pow(beta2, iter);
    const double step = config.learning_rate * std::sqrt(correction2) / correction1;
    auto update = [&](Eigen::MatrixXd& p, Eigen::MatrixXd& m1, Eigen::MatrixXd& m2,
                      const Eigen::MatrixXd& g) {
      m1 = beta1 * m1 + (1.0 - beta1) * g;
      m2 = beta2 * m2 + (1.0 - beta2) * g.cwiseProduct(g);
      p.array() -= step * m1.array() / (m2.array().sqrt() + eps);
    };
    update(params.w1, m.w1, v.w1, grads.w1);
    update(params.w2, m.w2, v.w2, grads.w2);
    auto update_row = [&](Eigen::RowVectorXd& p, Eigen::RowVectorXd& m1, Eigen::RowVectorXd& m2,
                          const Eigen::RowVectorXd& g) {
      m1 = beta1 * m1 + (1.0 - beta1) * g;
      m2 = beta2 * m2 + (1.0 - beta2) * g.cwiseProduct(g);
      p.array() -= step * m1.array() / (m2.array().sqrt() + eps);
    };
    update_row(params.b1, m.b1, v.b1, grads.b1);
    update_row(params.b2, m.b2, v.b2, grads.b2);
  }

  const double final_loss = detail::mlp_loss_and_gradients(params, x, y, nullptr);
  if (!std::isfinite(final_loss)) {
    throw std::runtime_error("fit_mlp: final loss is non-finite");
  }
  if (final_loss > initial_loss) {
    throw std::runtime_error("fit_mlp: training diverged (loss rose from " +
                             std::to_string(initial_loss) + " to " +
                             std::to_string(final_loss) + ")");
  }
  return ModelAdapter::make_mlp(std::move(params), final_loss);
}

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold_split: k must be >= 2");
  if (n < static_cast<std::size_t>(k)) {
    throw std::invalid_argument("kfold_split: n=" + std::to_string(n) + " < k=" +
                                std::to_string(k));
  }
  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  Rng rng(derive_seed(seed, 0x6b666f6c64ULL));  // independent of other streams
  rng.shuffle(indices);

  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  const std::size_t base = n / static_cast<std::size_t>(k);
  const std::size_t extra = n % static_cast<std::size_t>(k);
  std::size_t cursor = 0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    folds[f].assign(indices.begin() + static_cast<std::ptrdiff_t>(cursor),
                    indices.begin() + static_cast<std::ptrdiff_t>(cursor + size));
    cursor += size;
  }
  return folds;
}

PerturbResult perturb(std::span<const double> predictions, double scale, std::uint64_t seed) {
  if (!(scale > 0.0)) throw std::invalid_argument("perturb: scale must be > 0");
  PerturbResult out;
  out.values.assign(predictions.begin(), predictions.end());
  if (predictions.size() < 2) {
    out.degenerate = true;
    return out;
  }
  double mean = 0.0;
  for (double v : predictions) mean += v;
  mean /= static_cast<double>(predictions.size());
  double ss = 0.0;
  for (double v : predictions) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(predictions.size() - 1));
  if (!(sd > 0.0)) {
    out.degenerate = true;  // constant predictions: nothing to scale the noise by
    return out;
  }
  out.sigma = scale * sd;
  Rng rng(seed);
  for (double& v : out.values) v += out.sigma * rng.normal();
  return out;
}

namespace {

// Applies the disclosed positivity shift to the response side when needed
// and evaluates RGX_p. Only the ordering of z enters the metric, so z needs
// no shift.
MetricOutcome shifted_rgx(std::span<const double> response, std::span<const double> score,
                          double p) {
  MetricOutcome out;
  ShiftedVector shifted = shift_to_positive(response);
  out.shift = shifted.shift;
  out.details = rgx_p(RankedSample::from_values(std::move(shifted.values)), score, p);
  out.value = out.details.value;
  return out;
}

}  // namespace

MetricOutcome rga(std::span<const double> y_true, std::span<const double> y_pred, double p) {
  return shifted_rgx(y_true, y_pred, p);
}

MetricOutcome rgr(std::span<const double> y_pred, std::span<const double> y_pred_perturbed,
                  double p) {
  return shifted_rgx(y_pred, y_pred_perturbed, p);
}

RgeOutcome rge(std::span<const double> y_pred_full, std::span<const double> y_pred_reduced,
               double p) {
  const MetricOutcome raw = shifted_rgx(y_pred_full, y_pred_reduced, p);
  RgeOutcome out;
  out.concordance = raw.value;
  out.contribution = 1.0 - raw.value;
  out.shift = raw.shift;
  return out;
}

namespace {

constexpr std::uint64_t kStreamMlpFit = 100;
constexpr std::uint64_t kStreamMlpReduced = 200;
constexpr std::uint64_t kStreamPerturb = 300;

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

ModelAdapter fit_model(ModelKind kind, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                       const PipelineConfig& config, int hidden, std::uint64_t seed) {
  if (kind == ModelKind::kOls) return fit_ols(x, y);
  MlpConfig mlp;
  mlp.hidden = hidden;
  mlp.max_iterations = config.mlp_max_iterations;
  mlp.learning_rate = config.mlp_learning_rate;
  mlp.seed = seed;
  return fit_mlp(x, y, mlp);
}

void summarize(MetricSummary& summary) {
  const auto n = static_cast<double>(summary.per_fold.size());
  double mean = 0.0;
  for (double v : summary.per_fold) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : summary.per_fold) ss += (v - mean) * (v - mean);
  summary.mean = mean;
  summary.sd = summary.per_fold.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

MetricSummary named_summary(std::string name) {
  MetricSummary s;
  s.name = std::move(name);
  return s;
}

void record_shift(SafeReport& report, int fold, ModelKind kind, const std::string& metric,
                  double shift) {
  if (shift != 0.0) {
    report.shifts.push_back({fold, to_string(kind), metric, shift});
  }
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace

SafeReport run_univariate_pipeline(const Dataset& data, const std::string& target,
                                   const std::vector<std::string>& features,
                                   const PipelineConfig& config) {
  SafeReport report;
  report.p = config.p;
  report.seed = config.seed;
  report.folds = config.folds;
  report.perturb_scale = config.perturb_scale;
  report.targets = {target};
  report.features = features;

  const std::size_t n = data.rows();
  const auto folds = kfold_split(n, config.folds, config.seed);

  for (std::size_t model_idx = 0; model_idx < config.models.size(); ++model_idx) {
    const ModelKind kind = config.models[model_idx];
    ModelReport model_report;
    model_report.kind = kind;

    MetricSummary rga_summary = named_summary("RGA");
    MetricSummary rgr_summary = named_summary("RGR");
    std::vector<MetricSummary> rge_summaries;
    std::vector<MetricSummary> rge_raw_summaries;
    for (const auto& f : features) {
      rge_summaries.push_back(named_summary("RGE_" + f));
      rge_raw_summaries.push_back(named_summary("RGE_raw_" + f));
    }

    const bool linear = kind == ModelKind::kOls;
    for (std::size_t fold = 0; fold < folds.size(); ++fold) {
      const auto& test_rows = folds[fold];
      const auto train_rows = complement_rows(n, test_rows);

      const FeatureEncoder encoder =
          FeatureEncoder::fit(data, features, train_rows, linear, linear);
      const Eigen::MatrixXd x_train = encoder.encode(data, train_rows);
      const Eigen::MatrixXd x_test = encoder.encode(data, test_rows);
      const auto y_train_vec = target_vector(data, target, train_rows);
      const auto y_test = target_vector(data, target, test_rows);
      const Eigen::MatrixXd y_train =
          Eigen::Map<const Eigen::MatrixXd>(y_train_vec.data(),
                                            static_cast<Eigen::Index>(y_train_vec.size()), 1);

      const ModelAdapter model =
          fit_model(kind, x_train, y_train, config, config.mlp_hidden_univariate,
                    derive_seed(config.seed, fold, static_cast<std::uint64_t>(kind), kStreamMlpFit));
      const Eigen::VectorXd pred = model.predict(x_test).col(0);
      const std::vector<double> pred_vec = to_std(pred);

      const MetricOutcome acc = rga(y_test, pred_vec, config.p);
      rga_summary.per_fold.push_back(acc.value);
      record_shift(report, static_cast<int>(fold), kind, "RGA", acc.shift);

      const PerturbResult noisy =
          perturb(pred_vec, config.perturb_scale,
                  derive_seed(config.seed, fold, static_cast<std::uint64_t>(kind), kStreamPerturb));
      const MetricOutcome rob = rgr(pred_vec, noisy.values, config.p);
      rgr_summary.per_fold.push_back(rob.value);
      record_shift(report, static_cast<int>(fold), kind, "RGR", rob.shift);

      for (std::size_t f = 0; f < features.size(); ++f) {
        std::vector<std::string> reduced_features;
        for (std::size_t g = 0; g < features.size(); ++g) {
          if (g != f) reduced_features.push_back(features[g]);
        }
        const FeatureEncoder reduced_encoder =
            FeatureEncoder::fit(data, reduced_features, train_rows, linear, linear);
        const ModelAdapter reduced_model = fit_model(
            kind, reduced_encoder.encode(data, train_rows), y_train, config,
            config.mlp_hidden_univariate,
            derive_seed(config.seed, fold, static_cast<std::uint64_t>(kind), kStreamMlpReduced + f));
        const Eigen::VectorXd reduced_pred =
            reduced_model.predict(reduced_encoder.encode(data, test_rows)).col(0);
        const RgeOutcome exp = rge(pred_vec, to_std(reduced_pred), config.p);
        rge_summaries[f].per_fold.push_back(exp.contribution);
        rge_raw_summaries[f].per_fold.push_back(exp.concordance);
        record_shift(report, static_cast<int>(fold), kind, rge_summaries[f].name, exp.shift);
      }
    }

    summarize(rga_summary);
    summarize(rgr_summary);
    model_report.metrics.push_back(std::move(rga_summary));
    model_report.metrics.push_back(std::move(rgr_summary));
    for (auto& s : rge_summaries) {
      summarize(s);
      model_report.metrics.push_back(std::move(s));
    }
    for (auto& s : rge_raw_summaries) {
      summarize(s);
      model_report.metrics.push_back(std::move(s));
    }
    report.models.push_back(std::move(model_report));
  }
  return report;
}

SafeReport run_multivariate_pipeline(const Dataset& data,
                                     const std::vector<std::string>& targets,
                                     const std::vector<std::string>& features,
                                     const PipelineConfig& config) {
  if (targets.size() < 2) {
    if (targets.size() == 1) return run_univariate_pipeline(data, targets[0], features, config);
    throw std::invalid_argument("run_multivariate_pipeline: no targets given");
  }

  SafeReport report;
  report.p = config.p;
  report.seed = config.seed;
  report.folds = config.folds;
  report.perturb_scale = config.perturb_scale;
  report.whitening = to_string(config.scheme);
  report.targets = targets;
  report.features = features;

  const std::size_t n = data.rows();
  const auto folds = kfold_split(n, config.folds, config.seed);
  const auto d = static_cast<Eigen::Index>(targets.size());

  std::vector<std::size_t> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});

  for (std::size_t model_idx = 0; model_idx < config.models.size(); ++model_idx) {
    const ModelKind kind = config.models[model_idx];
    ModelReport model_report;
    model_report.kind = kind;

    MetricSummary rga_summary = named_summary("RGA");
    MetricSummary rgr_summary = named_summary("RGR");
    std::vector<MetricSummary> rge_summaries;
    for (const auto& f : features) rge_summaries.push_back(named_summary("RGE_" + f));

    const bool linear = kind == ModelKind::kOls;
    for (std::size_t fold = 0; fold < folds.size(); ++fold) {
      const auto& test_rows = folds[fold];
      const auto train_rows = complement_rows(n, test_rows);

      const FeatureEncoder encoder =
          FeatureEncoder::fit(data, features, train_rows, linear, linear);
      const Eigen::MatrixXd x_train = encoder.encode(data, train_rows);
      const Eigen::MatrixXd x_test = encoder.encode(data, test_rows);
      const Eigen::MatrixXd y_train = target_matrix(data, targets, train_rows);
      const Eigen::MatrixXd y_test = target_matrix(data, targets, test_rows);

      const WhiteningTransform transform =
          config.whiten_full_data
              ? fit_whitening(target_matrix(data, targets, all_rows), config.scheme)
              : fit_whitening(y_train, config.scheme);
      if (model_idx == 0) {
        report.lambdas_per_fold.push_back(to_std(transform.lambdas));
      }

      const ModelAdapter model =
          fit_model(kind, x_train, y_train, config, config.mlp_hidden_multivariate,
                    derive_seed(config.seed, fold, static_cast<std::uint64_t>(kind), kStreamMlpFit));
      const Eigen::MatrixXd pred = model.predict(x_test);

      // Accuracy: truth vs prediction per whitened coordinate.
      const MultivariateRgxResult acc =
          multivariate_rgx_with_transform(y_test, pred, config.p, transform);
      rga_summary.per_fold.push_back(acc.value);
      for (std::size_t j = 0; j < acc.shifts.size(); ++j) {
        record_shift(report, static_cast<int>(fold), kind, "RGA[" + targets[j] + "]",
                     acc.shifts[j]);
      }

      // Robustness: perturb each whitened predicted coordinate.
      const Eigen::MatrixXd pred_white = transform.apply(pred);
      double rgr_value = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        const std::vector<double> coord(pred_white.col(j).begin(), pred_white.col(j).end());
        const PerturbResult noisy =
            perturb(coord, config.perturb_scale,
                    derive_seed(config.seed, fold, static_cast<std::uint64_t>(kind),
                                kStreamPerturb + static_cast<std::uint64_t>(j)));
        const MetricOutcome rob = rgr(coord, noisy.values, config.p);
        rgr_value += transform.lambdas(j) * rob.value;
        record_shift(report, static_cast<int>(fold), kind, "RGR[" + targets[static_cast<std::size_t>(j)] + "]",
                     rob.shift);
      }
      rgr_summary.per_fold.push_back(rgr_value);

      // Explainability: leave-one-feature-out refits, compared in the
      // whitened prediction space.
      for (std::size_t f = 0; f < features.size(); ++f) {
        std::vector<std::string> reduced_features;
        for (std::size_t g = 0; g < features.size(); ++g) {
          if (g != f) reduced_features.push_back(features[g]);
        }
        const FeatureEncoder reduced_encoder =
            FeatureEncoder::fit(data, reduced_features, train_rows, linear, linear);
        const ModelAdapter reduced_model = fit_model(
            kind, reduced_encoder.encode(data, train_rows), y_train, config,
            config.mlp_hidden_multivariate,
            derive_seed(config.seed, fold, static_cast<std::uint64_t>(kind), kStreamMlpReduced + f));
        const Eigen::MatrixXd reduced_white =
            transform.apply(reduced_model.predict(reduced_encoder.encode(data, test_rows)));

        double contribution = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) {
          const std::vector<double> full_coord(pred_white.col(j).begin(),
                                               pred_white.col(j).end());
          const std::vector<double> reduced_coord(reduced_white.col(j).begin(),
                                                  reduced_white.col(j).end());
          const RgeOutcome exp = rge(full_coord, reduced_coord, config.p);
          contribution += transform.lambdas(j) * exp.contribution;
          record_shift(report, static_cast<int>(fold), kind,
                       rge_summaries[f].name + "[" + targets[static_cast<std::size_t>(j)] + "]",
                       exp.shift);
        }
        rge_summaries[f].per_fold.push_back(contribution);
      }
    }

    summarize(rga_summary);
    summarize(rgr_summary);
    model_report.metrics.push_back(std::move(rga_summary));
    model_report.metrics.push_back(std::move(rgr_summary));
    for (auto& s : rge_summaries) {
      summarize(s);
      model_report.metrics.push_back(std::move(s));
    }
    report.models.push_back(std::move(model_report));
  }
  return report;
}

}  // namespace rgm
