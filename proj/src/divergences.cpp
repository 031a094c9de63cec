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

#include "rgmetrics/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rgmetrics/errors.hpp"

namespace rgm {

namespace {

constexpr double kWeightTol = 1e-12;

void require_positive_p(double p, const char* who) {
  if (p <= 0.0) {
    throw std::invalid_argument(std::string(who) + ": p must be > 0");
  }
}

}  // namespace

StepCDF StepCDF::from_atoms(std::vector<std::pair<double, double>> atoms) {
  if (atoms.empty()) {
    throw std::invalid_argument("StepCDF: empty atom set");
  }
  for (const auto& [loc, w] : atoms) {
    if (!std::isfinite(loc)) throw std::invalid_argument("StepCDF: non-finite location");
    if (!(w > 0.0)) throw std::invalid_argument("StepCDF: weights must be positive");
  }
  std::sort(atoms.begin(), atoms.end());

  StepCDF out;
  out.locations_.reserve(atoms.size());
  out.weights_.reserve(atoms.size());
  for (const auto& [loc, w] : atoms) {
    if (!out.locations_.empty() && loc == out.locations_.back()) {
      out.weights_.back() += w;
    } else {
      out.locations_.push_back(loc);
      out.weights_.push_back(w);
    }
  }

  double total = 0.0;
  for (double w : out.weights_) total += w;
  out.cumulative_.resize(out.weights_.size());
  double running = 0.0;
  for (std::size_t i = 0; i < out.weights_.size(); ++i) {
    out.weights_[i] /= total;
    running += out.weights_[i];
    out.cumulative_[i] = running;
  }
  out.cumulative_.back() = 1.0;  // pin the top against rounding drift
  return out;
}

StepCDF StepCDF::from_sample(std::span<const double> sample, std::span<const double> weights) {
  if (sample.empty()) {
    throw std::invalid_argument("StepCDF: empty sample");
  }
  if (!weights.empty() && weights.size() != sample.size()) {
    throw std::invalid_argument("StepCDF: weights length mismatch");
  }
  std::vector<std::pair<double, double>> atoms(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    atoms[i] = {sample[i], weights.empty() ? 1.0 : weights[i]};
  }
  return from_atoms(std::move(atoms));
}

StepCDF StepCDF::dirac(double location) { return from_atoms({{location, 1.0}}); }

StepCDF StepCDF::uniform_grid(std::size_t n) {
  if (n == 0) throw std::invalid_argument("StepCDF::uniform_grid: n must be >= 1");
  // Left-endpoint atoms (i-1)/n: under this convention the self-concordance
  // staircase of an n-point equal-weight sample is matched exactly, so the
  // identity being verified is 0 = 0 for identical inputs.
  std::vector<std::pair<double, double>> atoms(n);
  for (std::size_t i = 0; i < n; ++i) {
    atoms[i] = {static_cast<double>(i) / static_cast<double>(n), 1.0};
  }
  return from_atoms(std::move(atoms));
}

double StepCDF::cdf(double x) const {
  const auto it = std::upper_bound(locations_.begin(), locations_.end(), x);
  if (it == locations_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - locations_.begin()) - 1];
}

double StepCDF::quantile(double q) const {
  if (q <= 0.0) return locations_.front();
  if (q > 1.0) throw std::invalid_argument("StepCDF::quantile: q must be <= 1");
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), q);
  return locations_[static_cast<std::size_t>(it - cumulative_.begin())];
}

double cvm_p(const StepCDF& x, const StepCDF& y, double p) {
  require_positive_p(p, "cvm_p");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double gap = std::abs(x.cumulative()[i] - y.cdf(x.locations()[i]));
    sum += x.weights()[i] * (gap > 0.0 ? std::pow(gap, p) : 0.0);
  }
  return sum;
}

StepCDF concordance_function(const StepCDF& x, const StepCDF& y) {
  // The CDF q -> F_x(F_y^[-1](q)) is flat between consecutive cumulative
  // levels of y; its jumps carry the atom masses below.
  const std::size_t n = y.size();
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(n + 1);

  double prev_value = 0.0;  // F_x just below the first interval
  double prev_level = 0.0;  // q where the current flat stretch started
  for (std::size_t i = 0; i < n; ++i) {
    const double value = x.cdf(y.locations()[i]);
    const double mass = value - prev_value;
    if (mass > 0.0) atoms.emplace_back(prev_level, mass);
    prev_value = value;
    prev_level = y.cumulative()[i];
  }
  // C(1) := 1 by convention; any F_x mass above y's support lands at q = 1.
  const double top = 1.0 - prev_value;
  if (top > 0.0) atoms.emplace_back(1.0, top);
  if (atoms.empty()) atoms.emplace_back(0.0, 1.0);
  return StepCDF::from_atoms(std::move(atoms));
}

double wasserstein_1d(const StepCDF& x, const StepCDF& y, double p) {
  if (p < 1.0) {
    throw std::invalid_argument("wasserstein_1d: p must be >= 1");
  }
  // Both quantile functions are constant between cumulative breakpoints;
  // merge the two breakpoint sets and sum exact segment contributions.
  double cost = 0.0;
  double q_prev = 0.0;
  std::size_t ix = 0;
  std::size_t iy = 0;
  while (ix < x.size() && iy < y.size()) {
    const double q_next = std::min(x.cumulative()[ix], y.cumulative()[iy]);
    const double width = q_next - q_prev;
    if (width > 0.0) {
      const double gap = std::abs(x.locations()[ix] - y.locations()[iy]);
      cost += width * (gap > 0.0 ? std::pow(gap, p) : 0.0);
    }
    if (x.cumulative()[ix] <= q_next) ++ix;
    if (iy < y.size() && y.cumulative()[iy] <= q_next) ++iy;
    q_prev = q_next;
  }
  return std::pow(cost, 1.0 / p);
}

double energy_distance(const StepCDF& x, const StepCDF& y) {
  auto mean_abs_gap = [](const StepCDF& a, const StepCDF& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        sum += a.weights()[i] * b.weights()[j] *
               std::abs(a.locations()[i] - b.locations()[j]);
      }
    }
    return sum;
  };
  return 2.0 * mean_abs_gap(x, y) - mean_abs_gap(x, x) - mean_abs_gap(y, y);
}

CvmWassersteinReport verify_cvm_wasserstein(const StepCDF& x, const StepCDF& y, double p) {
  require_positive_p(p, "verify_cvm_wasserstein");
  CvmWassersteinReport report;
  report.cvm = cvm_p(x, y, p);
  report.cvm_root = std::pow(report.cvm, 1.0 / p);
  const StepCDF concordance = concordance_function(x, y);
  report.wasserstein = wasserstein_1d(StepCDF::uniform_grid(x.size()), concordance, p);
  report.residual = std::abs(report.cvm_root - report.wasserstein);
  return report;
}

StepCDF mean_cdf(const std::vector<StepCDF>& ensemble, std::span<const double> probabilities) {
  if (ensemble.empty()) {
    throw std::invalid_argument("mean_cdf: empty ensemble");
  }
  if (probabilities.size() != ensemble.size()) {
    throw std::invalid_argument("mean_cdf: probability count mismatch");
  }
  // The pointwise probability-weighted average of CDFs is the CDF of the
  // mixture with the same weights.
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    if (!(probabilities[k] > 0.0)) {
      throw std::invalid_argument("mean_cdf: probabilities must be positive");
    }
    for (std::size_t i = 0; i < ensemble[k].size(); ++i) {
      atoms.emplace_back(ensemble[k].locations()[i],
                         probabilities[k] * ensemble[k].weights()[i]);
    }
  }
  return StepCDF::from_atoms(std::move(atoms));
}

BVReport bias_variance_decompose(const std::vector<StepCDF>& ensemble,
                                 std::span<const double> probabilities,
                                 const StepCDF& truth) {
  if (ensemble.empty()) {
    throw std::invalid_argument("bias_variance_decompose: empty ensemble");
  }
  if (probabilities.size() != ensemble.size()) {
    throw std::invalid_argument("bias_variance_decompose: probability count mismatch");
  }
  double prob_total = 0.0;
  for (double prob : probabilities) prob_total += prob;
  if (std::abs(prob_total - 1.0) > 1e-9) {
    throw std::invalid_argument("bias_variance_decompose: probabilities must sum to 1");
  }

  // All three integrals are sums over the atoms of the truth; evaluating
  // every CDF at the same points keeps the algebraic identity exact.
  const std::size_t m = truth.size();
  std::vector<double> mean_values(m, 0.0);
  std::vector<std::vector<double>> member_values(ensemble.size(), std::vector<double>(m));
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      member_values[k][i] = ensemble[k].cdf(truth.locations()[i]);
      mean_values[i] += probabilities[k] * member_values[k][i];
    }
  }

  BVReport report;
  for (std::size_t i = 0; i < m; ++i) {
    const double w = truth.weights()[i];
    const double f_truth = truth.cumulative()[i];
    const double bias_gap = mean_values[i] - f_truth;
    report.bias_term += w * bias_gap * bias_gap;
    for (std::size_t k = 0; k < ensemble.size(); ++k) {
      const double total_gap = member_values[k][i] - f_truth;
      const double var_gap = member_values[k][i] - mean_values[i];
      report.total_error += probabilities[k] * w * total_gap * total_gap;
      report.variance_term += probabilities[k] * w * var_gap * var_gap;
    }
  }
  report.residual = report.total_error - report.variance_term - report.bias_term;
  return report;
}

double projection_orthogonality(const StepCDF& h, const StepCDF& f_d, const StepCDF& truth) {
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double u = truth.locations()[i];
    sum += truth.weights()[i] * (h.cdf(u) - f_d.cdf(u)) * (f_d.cdf(u) - truth.cumulative()[i]);
  }
  return sum;
}

BVReport global_decompose(const StepCDF& f_t, const StepCDF& f_d, const StepCDF& truth,
                          const std::vector<StepCDF>& family_samples, double tolerance) {
  for (std::size_t k = 0; k < family_samples.size(); ++k) {
    const double cross = projection_orthogonality(family_samples[k], f_d, truth);
    if (std::abs(cross) > tolerance) {
      throw std::invalid_argument(
          "global_decompose: f_d is not the projection onto the family "
          "(orthogonality residual " +
          std::to_string(cross) + " for sample " + std::to_string(k) + ")");
    }
  }

  BVReport report;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double w = truth.weights()[i];
    const double u = truth.locations()[i];
    const double f_truth = truth.cumulative()[i];
    const double trained = f_t.cdf(u);
    const double optimal = f_d.cdf(u);
    report.total_error += w * (trained - f_truth) * (trained - f_truth);
    report.approx_term += w * (trained - optimal) * (trained - optimal);
    report.bias_term += w * (optimal - f_truth) * (optimal - f_truth);
  }
  report.residual = report.total_error - report.approx_term - report.bias_term;
  return report;
}

}  // namespace rgm
