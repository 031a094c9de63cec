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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "rgmetrics/divergences.hpp"
#include "rgmetrics/explain.hpp"
#include "rgmetrics/rank_core.hpp"
#include "rgmetrics/rgx_metrics.hpp"
#include "rgmetrics/whitening.hpp"

namespace py = pybind11;
using namespace rgm;

namespace {

RankedSample make_sample(const std::vector<double>& values) {
  return RankedSample::from_values(values);
}

}  // namespace

PYBIND11_MODULE(rgmetrics, m) {
  m.doc() = "Rank graduation metrics: Lorenz-curve based evaluation of "
            "accuracy, robustness and explainability";

  // rank_core ---------------------------------------------------------------
  m.def("compute_ranks",
        [](const std::vector<double>& values) { return compute_ranks(values); },
        py::arg("values"),
        "Stable ascending argsort; ties keep their original order");
  m.def("gini", [](const std::vector<double>& y) { return gini(make_sample(y)); },
        py::arg("y"), "Gini index of a positive vector");
  m.def("pietra", [](const std::vector<double>& y) { return pietra(make_sample(y)); },
        py::arg("y"), "Pietra index (largest diagonal gap of the Lorenz curve)");
  m.def("shift_to_positive",
        [](const std::vector<double>& values) {
          const auto out = shift_to_positive(values);
          return py::make_tuple(out.values, out.shift);
        },
        py::arg("values"),
        "Returns (shifted_values, shift); shift is 0 when already positive");

  // rgx_metrics ---------------------------------------------------------------
  py::class_<RgxResult>(m, "RgxResult")
      .def_readonly("value", &RgxResult::value)
      .def_readonly("p", &RgxResult::p)
      .def_readonly("numerator", &RgxResult::numerator)
      .def_readonly("denominator", &RgxResult::denominator)
      .def("__repr__", [](const RgxResult& r) {
        return "RgxResult(value=" + std::to_string(r.value) + ", p=" + std::to_string(r.p) +
               ")";
      });
  m.def("s_p",
        [](const std::vector<double>& y, double p) { return s_p(make_sample(y), p); },
        py::arg("y"), py::arg("p"), "Variability index of order p (s_1 equals Gini)");
  m.def("s_inf", [](const std::vector<double>& y) { return s_inf(make_sample(y)); },
        py::arg("y"), "Limit of s_p for large p");
  m.def("rgx_p",
        [](const std::vector<double>& y, const std::vector<double>& z, double p) {
          return rgx_p(make_sample(y), z, p);
        },
        py::arg("y"), py::arg("z"), py::arg("p") = 1.0,
        "Rank graduation metric of order p between a response and a score");
  m.def("wrgx_p",
        [](const std::vector<double>& y, const std::vector<double>& z, double p) {
          return wrgx_p(make_sample(y), z, p);
        },
        py::arg("y"), py::arg("z"), py::arg("p") = 1.0,
        "Weighted variant: segments weighted by the ordered response");

  // divergences ---------------------------------------------------------------
  m.def("cvm_p",
        [](const std::vector<double>& x, const std::vector<double>& y, double p) {
          return cvm_p(StepCDF::from_sample(x), StepCDF::from_sample(y), p);
        },
        py::arg("x"), py::arg("y"), py::arg("p") = 2.0,
        "p-th order Cramér-von Mises divergence between two samples");
  m.def("wasserstein_1d",
        [](const std::vector<double>& x, const std::vector<double>& y, double p) {
          return wasserstein_1d(StepCDF::from_sample(x), StepCDF::from_sample(y), p);
        },
        py::arg("x"), py::arg("y"), py::arg("p") = 1.0,
        "Exact one-dimensional p-Wasserstein distance between two samples");
  m.def("energy_distance",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          return energy_distance(StepCDF::from_sample(x), StepCDF::from_sample(y));
        },
        py::arg("x"), py::arg("y"), "Energy distance between two samples");

  // whitening -----------------------------------------------------------------
  py::class_<WhiteningTransform>(m, "WhiteningTransform")
      .def_readonly("matrix", &WhiteningTransform::matrix)
      .def_readonly("scales", &WhiteningTransform::scales)
      .def_readonly("whitened_means", &WhiteningTransform::whitened_means)
      .def_readonly("lambdas", &WhiteningTransform::lambdas)
      .def_property_readonly("scheme",
                             [](const WhiteningTransform& t) { return to_string(t.scheme); })
      .def("apply", &WhiteningTransform::apply, py::arg("data"));
  m.def("fit_whitening",
        [](const Eigen::MatrixXd& data, const std::string& scheme) {
          return fit_whitening(data, whitening_scheme_from_string(scheme));
        },
        py::arg("data"), py::arg("scheme") = "zca-cor",
        "Fit a scale-stable whitening transform (zca-cor or cholesky)");
  m.def("correlation_matrix", &correlation_matrix, py::arg("data"));
  m.def("lambda_weights", &lambda_weights, py::arg("whitened_means"));

  py::class_<MultivariateRgxResult>(m, "MultivariateRgxResult")
      .def_readonly("value", &MultivariateRgxResult::value)
      .def_readonly("per_coordinate", &MultivariateRgxResult::per_coordinate)
      .def_readonly("lambdas", &MultivariateRgxResult::lambdas)
      .def_readonly("shifts", &MultivariateRgxResult::shifts);
  m.def("multivariate_rgx_p",
        [](const Eigen::MatrixXd& y, const Eigen::MatrixXd& z, double p,
           const std::string& scheme) {
          return multivariate_rgx_p(y, z, p, whitening_scheme_from_string(scheme));
        },
        py::arg("y"), py::arg("z"), py::arg("p") = 1.0, py::arg("scheme") = "zca-cor",
        "Whitened, lambda-weighted multivariate RGX_p");

  py::class_<MultivariateGiniResult>(m, "MultivariateGiniResult")
      .def_readonly("value", &MultivariateGiniResult::value)
      .def_readonly("per_coordinate", &MultivariateGiniResult::per_coordinate)
      .def_readonly("shifts", &MultivariateGiniResult::shifts);
  m.def("multivariate_gini",
        [](const Eigen::MatrixXd& data, const WhiteningTransform& transform) {
          return multivariate_gini(data, transform);
        },
        py::arg("data"), py::arg("transform"));

  // explain ---------------------------------------------------------------------
  m.def("spearman",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return spearman(a, b);
        },
        py::arg("a"), py::arg("b"),
        "Spearman rank correlation with average ranks for ties");
  m.def("rank_features",
        [](const std::vector<double>& importances) { return rank_features(importances); },
        py::arg("importances"), "Descending ranking, ties get the average rank");
  m.def("normalize_importance",
        [](const std::vector<double>& phi_bar) { return normalize_importance(phi_bar); },
        py::arg("phi_bar"), "Rescale magnitudes to percentages summing to 100");
  m.def("aggregate_multivariate_importance",
        [](const std::vector<std::vector<double>>& per_dimension,
           const std::vector<double>& lambdas) {
          return aggregate_multivariate_importance(per_dimension, lambdas);
        },
        py::arg("per_dimension"), py::arg("lambdas"));
  m.def("shapley_mc",
        [](const std::function<Eigen::VectorXd(const Eigen::MatrixXd&)>& predict,
           const Eigen::MatrixXd& background, const Eigen::MatrixXd& explain,
           const std::vector<std::vector<std::size_t>>& groups, int permutations,
           std::uint64_t seed) {
          const ShapleyResult result =
              shapley_mc(predict, background, explain, groups, permutations, seed);
          py::dict out;
          out["contributions"] = result.contributions;
          out["standard_errors"] = result.standard_errors;
          out["phi_bar"] = result.phi_bar;
          out["phi_bar_se"] = result.phi_bar_se;
          out["importance"] = result.importance;
          return out;
        },
        py::arg("predict"), py::arg("background"), py::arg("explain"), py::arg("groups"),
        py::arg("permutations") = 50, py::arg("seed") = 0,
        "Monte Carlo permutation Shapley values with marginal imputation");
}
