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
#include <string>
#include <vector>

namespace rgm {

enum class WhiteningScheme { kZcaCor, kCholesky };

std::string to_string(WhiteningScheme scheme);
WhiteningScheme whitening_scheme_from_string(const std::string& name);

// Sample Pearson correlation of the columns of an n x d data matrix.
// Throws DegenerateError for constant columns.
Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& data);

// Whitening matrices built from a correlation matrix C (both satisfy
// W^T W = C^{-1}; they differ by an orthogonal factor).
Eigen::MatrixXd zca_cor_whitener(const Eigen::MatrixXd& correlation);
Eigen::MatrixXd cholesky_whitener(const Eigen::MatrixXd& correlation);

// A fitted whitening transform. `matrix` is the full column-convention
// whitening matrix W (including the per-column 1/sd scaling), so
// W^T W = Sigma^{-1} for the fitted covariance and apply() produces
// identity-correlation output. Dividing by the fitted sd before
// decorrelating makes the transform scale stable: rescaling input columns
// by positive constants leaves the whitened output unchanged.
//
// whitened_means are the coordinate means of the whitened (uncentered)
// data; lambdas are their normalized absolute values and weight the
// per-coordinate metrics in the multivariate extensions.
struct WhiteningTransform {
  Eigen::MatrixXd matrix;          // d x d, x* = matrix * x (column convention)
  Eigen::VectorXd scales;          // fitted per-column sample sd
  Eigen::VectorXd whitened_means;  // m*
  Eigen::VectorXd lambdas;
  WhiteningScheme scheme = WhiteningScheme::kZcaCor;

  // Rows are observations: returns data * matrix^T.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& data) const;
};

WhiteningTransform fit_whitening(const Eigen::MatrixXd& data, WhiteningScheme scheme);
WhiteningTransform fit_zca_cor(const Eigen::MatrixXd& data);
WhiteningTransform fit_cholesky(const Eigen::MatrixXd& data);

// lambda_i = |m_i| / sum_j |m_j|. Throws DegenerateError when every mean is
// zero (whiten unstandardized responses instead).
Eigen::VectorXd lambda_weights(const Eigen::VectorXd& whitened_means);

// Reproducibility audit file: matrix, scales, means, lambdas, scheme and
// any positivity shifts that were applied downstream.
void save_transform(const WhiteningTransform& transform, const std::string& path,
                    const std::vector<double>& shifts = {});
WhiteningTransform load_transform(const std::string& path);

// lambda-weighted average of per-coordinate Gini indices of the whitened
// data. Coordinates that are not strictly positive get the disclosed
// common shift (returned in `shifts`, zero where untouched).
struct MultivariateGiniResult {
  double value = 0.0;
  std::vector<double> per_coordinate;
  std::vector<double> shifts;
};
MultivariateGiniResult multivariate_gini(const Eigen::MatrixXd& data,
                                         const WhiteningTransform& transform);

// Multivariate RGX_p: whiten y and z with the transform fitted on y, score
// each whitened coordinate with the univariate metric and combine with the
// lambda weights. A coordinate pair that is not strictly positive receives
// one common shift (applied to both sides, disclosed in `shifts`).
struct MultivariateRgxResult {
  double value = 0.0;
  std::vector<double> per_coordinate;
  std::vector<double> lambdas;
  std::vector<double> shifts;
};
MultivariateRgxResult multivariate_rgx_p(const Eigen::MatrixXd& y, const Eigen::MatrixXd& z,
                                         double p, WhiteningScheme scheme);
MultivariateRgxResult multivariate_rgx_with_transform(const Eigen::MatrixXd& y,
                                                      const Eigen::MatrixXd& z, double p,
                                                      const WhiteningTransform& transform);

}  // namespace rgm
