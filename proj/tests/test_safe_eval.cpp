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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "rgmetrics/errors.hpp"
#include "rgmetrics/rng.hpp"
#include "rgmetrics/safe_eval.hpp"
#include "rgmetrics/synth.hpp"
#include "test_support.hpp"

using namespace rgm;

TEST_CASE("fit_ols") {
  Rng rng(191);

  SUBCASE("noiseless linear data is fit exactly") {
    Eigen::MatrixXd x(40, 1);
    Eigen::MatrixXd y(40, 1);
    for (int i = 0; i < 40; ++i) {
      x(i, 0) = rng.normal();
      y(i, 0) = 2.0 * x(i, 0) + 1.0;
    }
    const ModelAdapter model = fit_ols(x, y);
    CHECK(model.ols_parameters().intercept(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(model.ols_parameters().coefficients(0, 0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(model.training_mse() < 1e-20);
  }

  SUBCASE("normal equations oracle on a random well-conditioned system") {
    const Eigen::Index n = 200;
    const Eigen::Index k = 5;
    Eigen::MatrixXd x(n, k);
    Eigen::MatrixXd y(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) x(i, j) = rng.normal();
      y(i, 0) = rng.normal();
    }
    const ModelAdapter model = fit_ols(x, y);

    Eigen::MatrixXd design(n, k + 1);
    design.col(0).setOnes();
    design.rightCols(k) = x;
    const Eigen::MatrixXd beta =
        (design.transpose() * design).ldlt().solve(design.transpose() * y);
    CHECK(std::abs(model.ols_parameters().intercept(0) - beta(0, 0)) < 1e-8);
    for (Eigen::Index j = 0; j < k; ++j) {
      CHECK(std::abs(model.ols_parameters().coefficients(j, 0) - beta(j + 1, 0)) < 1e-8);
    }

    // residual orthogonality to the design columns
    const Eigen::VectorXd residual = y.col(0) - model.predict(x).col(0);
    for (Eigen::Index j = 0; j < k; ++j) {
      CHECK(std::abs(x.col(j).dot(residual)) < 1e-8);
    }
    CHECK(std::abs(residual.sum()) < 1e-8);
  }

  SUBCASE("rank deficiency and row shortage are rejected") {
    Eigen::MatrixXd x(30, 2);
    Eigen::MatrixXd y(30, 1);
    for (int i = 0; i < 30; ++i) {
      x(i, 0) = rng.normal();
      x(i, 1) = 3.0 * x(i, 0);  // collinear
      y(i, 0) = rng.normal();
    }
    CHECK_THROWS_AS(fit_ols(x, y), DegenerateError);

    Eigen::MatrixXd tiny_x(3, 3);
    Eigen::MatrixXd tiny_y(3, 1);
    CHECK_THROWS_AS(fit_ols(tiny_x, tiny_y), std::invalid_argument);
  }
}

TEST_CASE("fit_mlp") {
  Rng rng(193);
  const Eigen::Index n = 120;
  Eigen::MatrixXd x(n, 3);
  Eigen::MatrixXd y(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) x(i, j) = rng.normal();
    y(i, 0) = 1.5 * x(i, 0) - 0.7 * x(i, 1) + 0.3 * x(i, 2) + 0.2 * rng.normal();
  }

  SUBCASE("tracks the linear baseline on noisy linear data") {
    const ModelAdapter ols = fit_ols(x, y);
    MlpConfig config;
    config.seed = 7;
    const ModelAdapter mlp = fit_mlp(x, y, config);
    CHECK(mlp.training_mse() <= 1.5 * ols.training_mse());
  }

  SUBCASE("same seed gives bit-identical parameters") {
    MlpConfig config;
    config.seed = 99;
    const ModelAdapter a = fit_mlp(x, y, config);
    const ModelAdapter b = fit_mlp(x, y, config);
    CHECK(a.mlp_parameters().w1 == b.mlp_parameters().w1);
    CHECK(a.mlp_parameters().b1 == b.mlp_parameters().b1);
    CHECK(a.mlp_parameters().w2 == b.mlp_parameters().w2);
    CHECK(a.mlp_parameters().b2 == b.mlp_parameters().b2);

    MlpConfig other = config;
    other.seed = 100;
    const ModelAdapter c = fit_mlp(x, y, other);
    CHECK(a.mlp_parameters().w1 != c.mlp_parameters().w1);
  }

  SUBCASE("analytic gradients match central finite differences") {
    MlpConfig config;
    config.hidden = 4;
    config.seed = 5;

    Rng prng(211);
    MlpParameters params;
    params.w1.resize(3, 4);
    params.b1.resize(4);
    params.w2.resize(4, 1);
    params.b2.resize(1);
    for (int point = 0; point < 10; ++point) {
      for (Eigen::Index i = 0; i < 3; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) params.w1(i, j) = prng.normal();
      }
      for (Eigen::Index j = 0; j < 4; ++j) params.b1(j) = 0.5 * prng.normal();
      for (Eigen::Index j = 0; j < 4; ++j) params.w2(j, 0) = prng.normal();
      params.b2(0) = 0.5 * prng.normal();

      MlpParameters grads;
      detail::mlp_loss_and_gradients(params, x, y, &grads);

      const double h = 1e-6;
      auto check_entry = [&](double& slot, double analytic) {
        const double saved = slot;
        slot = saved + h;
        const double up = detail::mlp_loss_and_gradients(params, x, y, nullptr);
        slot = saved - h;
        const double down = detail::mlp_loss_and_gradients(params, x, y, nullptr);
        slot = saved;
        const double numeric = (up - down) / (2.0 * h);
        if (std::abs(analytic) < 1e-8 && std::abs(numeric) < 1e-8) return;
        CHECK(std::abs(analytic - numeric) <
              1e-5 * std::max({1.0, std::abs(analytic), std::abs(numeric)}));
      };
      for (Eigen::Index i = 0; i < 3; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) check_entry(params.w1(i, j), grads.w1(i, j));
      }
      for (Eigen::Index j = 0; j < 4; ++j) check_entry(params.b1(j), grads.b1(j));
      for (Eigen::Index j = 0; j < 4; ++j) check_entry(params.w2(j, 0), grads.w2(j, 0));
      check_entry(params.b2(0), grads.b2(0));
    }
  }
}

TEST_CASE("kfold_split") {
  SUBCASE("even and uneven splits") {
    const auto even = kfold_split(10, 5, 1);
    CHECK(even.size() == 5);
    for (const auto& fold : even) CHECK(fold.size() == 2);

    const auto uneven = kfold_split(11, 5, 1);
    std::multiset<std::size_t> sizes;
    for (const auto& fold : uneven) sizes.insert(fold.size());
    CHECK(sizes == std::multiset<std::size_t>{2, 2, 2, 2, 3});
  }

  SUBCASE("partition property and determinism") {
    Rng rng(223);
    for (int rep = 0; rep < 30; ++rep) {
      const std::size_t n = 5 + rng.below(200);
      const int k = 2 + static_cast<int>(rng.below(5));
      const std::uint64_t seed = rng.next_u64();
      const auto folds = kfold_split(n, k, seed);
      std::set<std::size_t> seen;
      for (const auto& fold : folds) {
        for (std::size_t r : fold) CHECK(seen.insert(r).second);
      }
      CHECK(seen.size() == n);
      CHECK(kfold_split(n, k, seed) == folds);
    }
  }

  CHECK_THROWS_AS(kfold_split(3, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(kfold_split(10, 1, 0), std::invalid_argument);
}

TEST_CASE("perturb") {
  Rng rng(227);

  SUBCASE("deterministic under seed, sd close to requested for large n") {
    std::vector<double> preds(10000);
    for (double& v : preds) v = 3.0 + 2.0 * rng.normal();
    const auto a = perturb(preds, 0.5, 42);
    const auto b = perturb(preds, 0.5, 42);
    CHECK(a.values == b.values);
    CHECK_FALSE(a.degenerate);

    // noise sd within 10% of scale * sd(preds)
    double mean = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) mean += a.values[i] - preds[i];
    mean /= static_cast<double>(preds.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      const double d = a.values[i] - preds[i] - mean;
      ss += d * d;
    }
    const double noise_sd = std::sqrt(ss / static_cast<double>(preds.size() - 1));
    CHECK(noise_sd == doctest::Approx(a.sigma).epsilon(0.1));
  }

  SUBCASE("constant predictions come back untouched with a warning flag") {
    const std::vector<double> flat(50, 2.5);
    const auto out = perturb(flat, 0.5, 1);
    CHECK(out.degenerate);
    CHECK(out.values == flat);
  }

  CHECK_THROWS_AS(perturb(std::vector<double>{1.0, 2.0}, 0.0, 1), std::invalid_argument);
}

TEST_CASE("rga rgr rge wrappers") {
  const std::vector<double> truth{0.1, 0.4, 0.2, 0.9};

  SUBCASE("perfect predictions give RGA 1, zero perturbation gives RGR 1") {
    CHECK(rga(truth, truth, 1.0).value == doctest::Approx(1.0));
    const std::vector<double> preds{0.3, 0.6, 0.5, 1.2};
    CHECK(rgr(preds, preds, 1.0).value == doctest::Approx(1.0));
  }

  SUBCASE("identical reduced model gives zero RGE contribution") {
    const std::vector<double> preds{0.3, 0.6, 0.5, 1.2};
    const auto out = rge(preds, preds, 1.0);
    CHECK(out.contribution == doctest::Approx(0.0));
    CHECK(out.concordance == doctest::Approx(1.0));
  }

  SUBCASE("nonpositive responses receive a disclosed shift") {
    const std::vector<double> signed_preds{-0.5, 0.2, 0.9, -0.1};
    const std::vector<double> other{0.1, 0.3, 0.8, 0.05};
    const auto out = rga(signed_preds, other, 1.0);
    CHECK(out.shift > 0.5);
    CHECK(out.value >= 0.0);
    CHECK(out.value <= 1.0);
  }
}

namespace {

PipelineConfig fast_config() {
  PipelineConfig config;
  config.folds = 5;
  config.seed = 1234;
  config.mlp_max_iterations = 400;
  return config;
}

const MetricSummary& find_metric(const ModelReport& report, const std::string& name) {
  for (const auto& m : report.metrics) {
    if (m.name == name) return m;
  }
  throw std::runtime_error("metric not found: " + name);
}

}  // namespace

TEST_CASE("univariate pipeline on synthetic data") {
  SynthSpec spec;
  spec.n = 300;
  spec.n_features = 3;
  spec.seed = 5;
  spec.noise_sd = 0.0;
  const Dataset data = synth_generate(spec);
  const std::vector<std::string> features{"x1", "x2", "x3"};

  PipelineConfig config = fast_config();
  const SafeReport report = run_univariate_pipeline(data, "y1", features, config);

  CHECK(report.models.size() == 2);
  for (const auto& model : report.models) {
    const auto& acc = find_metric(model, "RGA");
    CHECK(acc.per_fold.size() == 5);
    CHECK(acc.mean > 0.95);  // strong noiseless signal
    const auto& rob = find_metric(model, "RGR");
    CHECK(rob.mean > 0.5);
    CHECK(rob.mean <= 1.0);
    for (const auto& metric : model.metrics) {
      for (double v : metric.per_fold) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      CHECK(metric.sd >= 0.0);
    }
  }

  SUBCASE("determinism: identical config and seed reproduce the report") {
    const SafeReport again = run_univariate_pipeline(data, "y1", features, config);
    CHECK(again == report);
  }

  SUBCASE("pure-noise target scores near one half") {
    SynthSpec noise_spec = spec;
    noise_spec.n_irrelevant = 3;  // all features irrelevant: y is pure noise
    noise_spec.noise_sd = 1.0;
    noise_spec.seed = 17;
    const Dataset noise_data = synth_generate(noise_spec);
    PipelineConfig lm_only = config;
    lm_only.models = {ModelKind::kOls};
    const SafeReport noise_report =
        run_univariate_pipeline(noise_data, "y1", features, lm_only);
    const auto& acc = find_metric(noise_report.models[0], "RGA");
    CHECK(acc.mean > 0.35);
    CHECK(acc.mean < 0.65);
  }
}

TEST_CASE("duplicate feature: ablating the original is free") {
  SynthSpec spec;
  spec.n = 200;
  spec.n_features = 2;
  spec.seed = 31;
  Dataset data = synth_generate(spec);
  // x3 = exact duplicate of x2
  Column dup;
  dup.name = "x2_copy";
  dup.kind = ColumnKind::kContinuous;
  dup.numeric = data.column("x2").numeric;
  data.add_column(std::move(dup));

  PipelineConfig config = fast_config();
  config.models = {ModelKind::kOls};
  const SafeReport report =
      run_univariate_pipeline(data, "y1", {"x1", "x2", "x2_copy"}, config);
  const auto& rge_dup = find_metric(report.models[0], "RGE_x2");
  CHECK(rge_dup.mean < 1e-6);  // x2_copy reconstructs the prediction exactly
}

TEST_CASE("multivariate pipeline") {
  SynthSpec spec;
  spec.n = 240;
  spec.n_features = 3;
  spec.n_targets = 3;
  spec.seed = 11;
  spec.noise_sd = 0.15;
  const Dataset data = synth_generate(spec);
  const std::vector<std::string> features{"x1", "x2", "x3"};
  const std::vector<std::string> targets{"y1", "y2", "y3"};

  PipelineConfig config = fast_config();
  const SafeReport report = run_multivariate_pipeline(data, targets, features, config);

  CHECK(report.lambdas_per_fold.size() == 5);
  for (const auto& lambdas : report.lambdas_per_fold) {
    double total = 0.0;
    for (double l : lambdas) {
      CHECK(l >= 0.0);
      total += l;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (const auto& model : report.models) {
    for (const auto& metric : model.metrics) {
      for (double v : metric.per_fold) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
  const double lm_rga = find_metric(report.models[0], "RGA").mean;
  const double nn_rga = find_metric(report.models[1], "RGA").mean;
  CHECK(lm_rga > 0.8);
  CHECK(nn_rga > lm_rga - 0.1);

  SUBCASE("scale invariance of the whole pipeline") {
    Dataset scaled = data;
    // multiply all targets by a positive constant
    Dataset rebuilt;
    for (const auto& col : data.all_columns()) {
      Column copy = col;
      if (copy.name[0] == 'y') {
        for (double& v : copy.numeric) v *= 37.5;
      }
      rebuilt.add_column(std::move(copy));
    }
    const SafeReport scaled_report =
        run_multivariate_pipeline(rebuilt, targets, features, config);
    const double base_rga = find_metric(report.models[0], "RGA").mean;
    const double scaled_rga = find_metric(scaled_report.models[0], "RGA").mean;
    CHECK(std::abs(base_rga - scaled_rga) < 1e-8);
  }

  SUBCASE("d=1 degenerates to the univariate pipeline") {
    const SafeReport multi = run_multivariate_pipeline(data, {"y1"}, features, config);
    const SafeReport uni = run_univariate_pipeline(data, "y1", features, config);
    CHECK(multi == uni);
  }
}

TEST_CASE("rgr falls as the perturbation scale grows") {
  Rng rng(229);
  std::vector<double> preds(400);
  for (double& v : preds) v = 10.0 + 2.0 * rng.normal();

  double previous = 2.0;
  for (double scale : {0.01, 0.1, 0.5, 2.0}) {
    double total = 0.0;
    for (std::uint64_t replicate = 0; replicate < 20; ++replicate) {
      const auto noisy = perturb(preds, scale, derive_seed(777, replicate));
      total += rgr(preds, noisy.values, 1.0).value;
    }
    const double mean = total / 20.0;
    CHECK(mean <= previous + 1e-12);
    if (scale == 0.01) CHECK(mean > 0.99);
    previous = mean;
  }
}
