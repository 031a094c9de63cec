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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rgm {

// Right-continuous empirical CDF of a finite weighted atom set. Locations
// are strictly increasing, weights are positive and sum to 1.
class StepCDF {
 public:
  static StepCDF from_sample(std::span<const double> sample,
                             std::span<const double> weights = {});
  static StepCDF from_atoms(std::vector<std::pair<double, double>> atoms);
  static StepCDF dirac(double location);
  // n equally weighted atoms at the midpoints (i - 0.5)/n of [0,1].
  static StepCDF uniform_grid(std::size_t n);

  std::size_t size() const { return locations_.size(); }
  const std::vector<double>& locations() const { return locations_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

  // F(x), right-continuous.
  double cdf(double x) const;
  // Generalized inverse F^[-1](q) = inf{x : F(x) >= q} for q in (0,1].
  double quantile(double q) const;

 private:
  StepCDF() = default;

  std::vector<double> locations_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

// p-th order Cramér-von Mises divergence: the integral of |F_x - F_y|^p
// with respect to F_x (not its p-th root). Discrete convention: both CDFs
// are evaluated right-continuously at the atoms of x, which recovers the
// absolutely continuous definition under grid refinement. Asymmetric in
// its arguments.
double cvm_p(const StepCDF& x, const StepCDF& y, double p);

// Concordance function C(q) = F_x(F_y^[-1](q)) represented as the CDF of a
// distribution on [0,1], with C(1) := 1 so that mass sitting above the
// support of y is accounted for at q = 1.
StepCDF concordance_function(const StepCDF& x, const StepCDF& y);

// Exact one-dimensional p-Wasserstein distance via quantile-segment
// enumeration (returns the p-th root). Requires p >= 1.
double wasserstein_1d(const StepCDF& x, const StepCDF& y, double p);

// Energy distance 2 E|X-Y'| - E|X-X'| - E|Y-Y'| by exact double sums.
double energy_distance(const StepCDF& x, const StepCDF& y);

// Numerical check of the identity CvM_p(x,y)^{1/p} = W_p(U, C_{x,y}) with U
// discretized on the same grid size as x. The residual must shrink as the
// discretization of absolutely continuous inputs is refined.
struct CvmWassersteinReport {
  double cvm = 0.0;          // the integral
  double cvm_root = 0.0;     // its p-th root
  double wasserstein = 0.0;  // W_p(U_grid, C)
  double residual = 0.0;     // |cvm_root - wasserstein|
};
CvmWassersteinReport verify_cvm_wasserstein(const StepCDF& x, const StepCDF& y, double p);

// Terms of the squared-CvM error decompositions. residual is the defect of
// the identity being checked; both theorems share the container, unused
// terms stay 0. For the global decomposition bias_term holds the
// estimation error (optimal-model-to-truth) and approx_term the
// approximation error (trained-to-optimal).
struct BVReport {
  double total_error = 0.0;
  double variance_term = 0.0;
  double bias_term = 0.0;
  double approx_term = 0.0;
  double residual = 0.0;
};

// Classic decomposition: expected squared error of an ensemble of trained
// CDFs around the truth splits into variance around the mean model plus the
// squared bias of the mean model. The mean model is the probability-weighted
// pointwise average (a mixture CDF).
BVReport bias_variance_decompose(const std::vector<StepCDF>& ensemble,
                                 std::span<const double> probabilities,
                                 const StepCDF& truth);

// Pointwise probability-weighted mean of an ensemble of CDFs (the mixture).
StepCDF mean_cdf(const std::vector<StepCDF>& ensemble, std::span<const double> probabilities);

// Cross term of the projection optimality condition,
// integral of (h - f_d)(f_d - truth) d truth. Zero (up to tolerance) for
// every h in the convex family when f_d is the least-squares projection of
// the truth onto that family.
double projection_orthogonality(const StepCDF& h, const StepCDF& f_d, const StepCDF& truth);

// Global decomposition: the trained model's squared error against the truth
// splits into approximation (trained vs data-optimal) plus estimation
// (data-optimal vs truth). `family_samples` are members of the convex family
// used to verify that f_d really is the projection; if any orthogonality
// residual exceeds `tolerance` the caller passed a non-projected f_d and an
// exception is raised instead of a silently wrong decomposition.
BVReport global_decompose(const StepCDF& f_t, const StepCDF& f_d, const StepCDF& truth,
                          const std::vector<StepCDF>& family_samples,
                          double tolerance = 1e-6);

}  // namespace rgm
