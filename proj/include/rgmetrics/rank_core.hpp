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
#include <vector>

namespace rgm {

// Stable ascending argsort: result[i] is the index of the i-th smallest
// entry, ties keep their original relative order. The returned permutation
// depends on the input only through its ordering, so any strictly increasing
// transform of the values leaves it unchanged.
std::vector<std::size_t> compute_ranks(std::span<const double> values);

enum class Positivity {
  kStrict,     // every entry must be > 0
  kAllowZero,  // zeros tolerated (variability-index edge cases only)
};

// Common positive rescue for data that violates the positivity requirement:
// adds -min + eps_fraction * range when the minimum is <= 0, so orderings
// are preserved and the shift can be disclosed in reports. Data that is
// already strictly positive is returned untouched with shift == 0.
struct ShiftedVector {
  std::vector<double> values;
  double shift = 0.0;
};
ShiftedVector shift_to_positive(std::span<const double> values,
                                double eps_fraction = 1e-9);

// A positive response vector together with its induced ordering.
class RankedSample {
 public:
  static RankedSample from_values(std::vector<double> values,
                                  Positivity positivity = Positivity::kStrict);

  const std::vector<double>& values() const { return values_; }
  const std::vector<std::size_t>& order() const { return order_; }
  std::size_t size() const { return values_.size(); }
  double total() const { return total_; }
  double mean() const { return total_ / static_cast<double>(values_.size()); }
  // Value of the i-th order statistic (0-based).
  double sorted_value(std::size_t i) const { return values_[order_[i]]; }

 private:
  RankedSample(std::vector<double> values, std::vector<std::size_t> order, double total)
      : values_(std::move(values)), order_(std::move(order)), total_(total) {}

  std::vector<double> values_;
  std::vector<std::size_t> order_;
  double total_ = 0.0;
};

// Piecewise-linear curve on [0,1] with knots at k/N. knot(0) is always 0.
class PLCurve {
 public:
  explicit PLCurve(std::vector<double> knot_values);

  const std::vector<double>& knots() const { return knots_; }
  std::size_t segments() const { return knots_.size() - 1; }
  double total() const { return knots_.back(); }

  // Linear interpolation between knots. t is clamped to [0,1].
  double at(double t) const;

  // Same curve divided by its value at t = 1.
  PLCurve normalized() const;

 private:
  std::vector<double> knots_;
};

// Cumulative ascending-ordered sums: knot k holds the sum of the k smallest
// entries.
PLCurve lorenz_curve(const RankedSample& sample);

// Descending cumulative sums (upper envelope of every concordance curve).
PLCurve dual_lorenz_curve(const RankedSample& sample);

// Cumulative sums of y taken in the ordering induced by z. Coincides with
// lorenz_curve when z orders like y and with dual_lorenz_curve when z orders
// like -y.
PLCurve concordance_curve(const RankedSample& y, std::span<const double> z);

// Mean of d(s)^p over a unit segment where d ramps linearly between d0 >= 0
// and d1 >= 0: the closed form (d1^{p+1} - d0^{p+1}) / ((p+1)(d1 - d0)),
// switched to its series around the midpoint when d0 and d1 nearly agree so
// the power difference never cancels catastrophically.
double segment_power_mean(double d0, double d1, double p);

// Exact value of the integral over [0,1] of (b - a)^p given two curves on
// the same knot grid with b >= a. The difference is linear on each segment,
// so each segment contributes a closed-form power integral; no quadrature
// error stacks up for any real p > 0.
double pl_power_integral(const PLCurve& a, const PLCurve& b, double p);

// Gini index from the normalized Lorenz curve: 1 - 2 * area under it.
// Ranges over [0, 1 - 1/N].
double gini(const RankedSample& sample);

// Pietra index: largest vertical gap between the equality diagonal and the
// normalized Lorenz curve. The gap is piecewise linear, so the supremum sits
// on a knot.
double pietra(const RankedSample& sample);

}  // namespace rgm
