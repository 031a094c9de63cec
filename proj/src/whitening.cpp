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

#include "rgmetrics/whitening.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rgmetrics/errors.hpp"
#include "rgmetrics/rank_core.hpp"
#include "rgmetrics/rgx_metrics.hpp"

namespace rgm {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kEigenvalueFloor = 1e-10;  // relative to the largest eigenvalue

Eigen::MatrixXd centered(const Eigen::MatrixXd& data) {
  return data.rowwise() - data.colwise().mean();
}

// Sample (n-1) covariance of the columns.
Eigen::MatrixXd covariance(const Eigen::MatrixXd& data) {
  const Eigen::MatrixXd c = centered(data);
  return (c.transpose() * c) / static_cast<double>(data.rows() - 1);
}

void require_rows(const Eigen::MatrixXd& data, const char* who) {
  if (data.rows() < 2) {
    throw std::invalid_argument(std::string(who) + ": need at least 2 rows");
  }
}

}  // namespace

std::string to_string(WhiteningScheme scheme) {
  return scheme == WhiteningScheme::kZcaCor ? "zca-cor" : "cholesky";
}

WhiteningScheme whitening_scheme_from_string(const std::string& name) {
  if (name == "zca-cor" || name == "zca") return WhiteningScheme::kZcaCor;
  if (name == "cholesky") return WhiteningScheme::kCholesky;
  throw std::invalid_argument("unknown whitening scheme '" + name +
                              "' (expected zca-cor or cholesky)");
}

Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& data) {
  require_rows(data, "correlation_matrix");
  const Eigen::MatrixXd cov = covariance(data);
  const Eigen::Index d = cov.rows();
  Eigen::VectorXd sd(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(cov(j, j) > 0.0)) {
      throw DegenerateError("correlation_matrix: column " + std::to_string(j) +
                            " is constant; its correlation is undefined");
    }
    sd(j) = std::sqrt(cov(j, j));
  }
  Eigen::MatrixXd corr = cov.array() / (sd * sd.transpose()).array();
  corr.diagonal().setOnes();
  return corr;
}

Eigen::MatrixXd zca_cor_whitener(const Eigen::MatrixXd& correlation) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(correlation);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("zca_cor_whitener: eigendecomposition failed");
  }
  const Eigen::VectorXd values = solver.eigenvalues();
  const double floor = kEigenvalueFloor * values.maxCoeff();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < floor) {
      std::ostringstream msg;
      msg << "zca_cor_whitener: correlation is singular (eigenvalue " << values(i)
          << " below " << floor << "); offending direction ["
          << solver.eigenvectors().col(i).transpose() << "]";
      throw DegenerateError(msg.str());
    }
  }
  const Eigen::VectorXd inv_sqrt = values.array().rsqrt();
  return solver.eigenvectors() * inv_sqrt.asDiagonal() * solver.eigenvectors().transpose();
}

Eigen::MatrixXd cholesky_whitener(const Eigen::MatrixXd& correlation) {
  // Reuse the eigen-based singularity diagnostics, then factor C = L L^T and
  // take W = L^{-1} so that W^T W = C^{-1}.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(correlation);
  const Eigen::VectorXd values = solver.eigenvalues();
  const double floor = kEigenvalueFloor * values.maxCoeff();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < floor) {
      std::ostringstream msg;
      msg << "cholesky_whitener: correlation is singular (eigenvalue " << values(i)
          << " below " << floor << "); offending direction ["
          << solver.eigenvectors().col(i).transpose() << "]";
      throw DegenerateError(msg.str());
    }
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(correlation);
  if (llt.info() != Eigen::Success) {
    throw DegenerateError("cholesky_whitener: correlation is not positive definite");
  }
  const Eigen::MatrixXd lower = llt.matrixL();
  return lower.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(correlation.rows(), correlation.cols()));
}

Eigen::MatrixXd WhiteningTransform::apply(const Eigen::MatrixXd& data) const {
  if (data.cols() != matrix.cols()) {
    throw std::invalid_argument("WhiteningTransform::apply: dimension mismatch");
  }
  return data * matrix.transpose();
}

WhiteningTransform fit_whitening(const Eigen::MatrixXd& data, WhiteningScheme scheme) {
  require_rows(data, "fit_whitening");
  const Eigen::MatrixXd corr = correlation_matrix(data);
  const Eigen::MatrixXd cov = covariance(data);

  WhiteningTransform transform;
  transform.scheme = scheme;
  transform.scales = cov.diagonal().array().sqrt();
  const Eigen::MatrixXd corr_whitener = scheme == WhiteningScheme::kZcaCor
                                            ? zca_cor_whitener(corr)
                                            : cholesky_whitener(corr);
  transform.matrix = corr_whitener * transform.scales.cwiseInverse().asDiagonal();
  transform.whitened_means = transform.matrix * data.colwise().mean().transpose();
  transform.lambdas = lambda_weights(transform.whitened_means);
  return transform;
}

WhiteningTransform fit_zca_cor(const Eigen::MatrixXd& data) {
  return fit_whitening(data, WhiteningScheme::kZcaCor);
}

WhiteningTransform fit_cholesky(const Eigen::MatrixXd& data) {
  return fit_whitening(data, WhiteningScheme::kCholesky);
}

Eigen::VectorXd lambda_weights(const Eigen::VectorXd& whitened_means) {
  const double total = whitened_means.array().abs().sum();
  if (!(total > 0.0)) {
    throw DegenerateError(
        "lambda_weights: all whitened means are zero; fit the whitening on "
        "unstandardized responses so the coordinate weights are defined");
  }
  return whitened_means.array().abs() / total;
}

void save_transform(const WhiteningTransform& transform, const std::string& path,
                    const std::vector<double>& shifts) {
  ordered_json doc;
  doc["scheme"] = to_string(transform.scheme);
  const Eigen::Index d = transform.matrix.rows();
  doc["dimension"] = d;
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < d; ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < d; ++j) row.push_back(transform.matrix(i, j));
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  doc["scales"] = std::vector<double>(transform.scales.begin(), transform.scales.end());
  doc["whitened_means"] =
      std::vector<double>(transform.whitened_means.begin(), transform.whitened_means.end());
  doc["lambdas"] = std::vector<double>(transform.lambdas.begin(), transform.lambdas.end());
  doc["shifts"] = shifts;

  std::ofstream out(path);
  if (!out) throw IoError("save_transform: cannot open '" + path + "' for writing");
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("save_transform: write to '" + path + "' failed");
}

WhiteningTransform load_transform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_transform: cannot open '" + path + "'");
  ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw DataError("load_transform: malformed file '" + path + "': " + e.what());
  }

  WhiteningTransform transform;
  transform.scheme = whitening_scheme_from_string(doc.at("scheme").get<std::string>());
  const auto d = doc.at("dimension").get<Eigen::Index>();
  transform.matrix.resize(d, d);
  const auto& rows = doc.at("matrix");
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      transform.matrix(i, j) = rows.at(i).at(j).get<double>();
    }
  }
  auto to_vector = [](const ordered_json& node) {
    const auto values = node.get<std::vector<double>>();
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                             static_cast<Eigen::Index>(values.size())));
  };
  transform.scales = to_vector(doc.at("scales"));
  transform.whitened_means = to_vector(doc.at("whitened_means"));
  transform.lambdas = to_vector(doc.at("lambdas"));
  return transform;
}

namespace {

std::vector<double> column_of(const Eigen::MatrixXd& m, Eigen::Index j) {
  return std::vector<double>(m.col(j).begin(), m.col(j).end());
}

// One common shift per coordinate, covering every value that will enter a
// positive-vector construction. Zero when the coordinate already qualifies.
double common_shift(std::vector<double>& primary, std::vector<double>* secondary) {
  double lo = primary[0];
  double hi = primary[0];
  for (double v : primary) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (secondary != nullptr) {
    for (double v : *secondary) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (lo > 0.0) return 0.0;
  const double range = hi - lo;
  const double shift = -lo + 1e-9 * (range > 0.0 ? range : 1.0);
  for (double& v : primary) v += shift;
  if (secondary != nullptr) {
    for (double& v : *secondary) v += shift;
  }
  return shift;
}

}  // namespace

MultivariateGiniResult multivariate_gini(const Eigen::MatrixXd& data,
                                         const WhiteningTransform& transform) {
  const Eigen::MatrixXd whitened = transform.apply(data);
  MultivariateGiniResult result;
  result.per_coordinate.resize(static_cast<std::size_t>(whitened.cols()));
  result.shifts.resize(static_cast<std::size_t>(whitened.cols()));
  for (Eigen::Index j = 0; j < whitened.cols(); ++j) {
    std::vector<double> coord = column_of(whitened, j);
    result.shifts[static_cast<std::size_t>(j)] = common_shift(coord, nullptr);
    const double g = gini(RankedSample::from_values(std::move(coord)));
    result.per_coordinate[static_cast<std::size_t>(j)] = g;
    result.value += transform.lambdas(j) * g;
  }
  return result;
}

MultivariateRgxResult multivariate_rgx_with_transform(const Eigen::MatrixXd& y,
                                                      const Eigen::MatrixXd& z, double p,
                                                      const WhiteningTransform& transform) {
  if (y.rows() != z.rows() || y.cols() != z.cols()) {
    throw std::invalid_argument("multivariate_rgx: y and z must have the same shape");
  }
  const Eigen::MatrixXd y_white = transform.apply(y);
  const Eigen::MatrixXd z_white = transform.apply(z);

  MultivariateRgxResult result;
  const auto d = static_cast<std::size_t>(y.cols());
  result.per_coordinate.resize(d);
  result.shifts.resize(d);
  result.lambdas.assign(transform.lambdas.begin(), transform.lambdas.end());
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    std::vector<double> y_coord = column_of(y_white, j);
    std::vector<double> z_coord = column_of(z_white, j);
    result.shifts[static_cast<std::size_t>(j)] = common_shift(y_coord, &z_coord);
    const RgxResult r = rgx_p(RankedSample::from_values(std::move(y_coord)), z_coord, p);
    result.per_coordinate[static_cast<std::size_t>(j)] = r.value;
    result.value += transform.lambdas(j) * r.value;
  }
  return result;
}

MultivariateRgxResult multivariate_rgx_p(const Eigen::MatrixXd& y, const Eigen::MatrixXd& z,
                                         double p, WhiteningScheme scheme) {
  if (y.cols() == 1) {
    // One target: the whitening is a positive rescaling, which the
    // univariate metric ignores, so delegate directly.
    MultivariateRgxResult result;
    std::vector<double> y_coord = column_of(y, 0);
    std::vector<double> z_coord = column_of(z, 0);
    result.shifts.push_back(common_shift(y_coord, &z_coord));
    const RgxResult r = rgx_p(RankedSample::from_values(std::move(y_coord)), z_coord, p);
    result.per_coordinate.push_back(r.value);
    result.lambdas.push_back(1.0);
    result.value = r.value;
    return result;
  }
  return multivariate_rgx_with_transform(y, z, p, fit_whitening(y, scheme));
}

}  // namespace rgm
