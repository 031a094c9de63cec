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

#include "rgmetrics/rank_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rgmetrics/errors.hpp"

namespace rgm {

std::vector<std::size_t> compute_ranks(std::span<const double> values) {
  if (values.size() < 2) {
    throw std::invalid_argument("compute_ranks: need at least 2 values, got " +
                                std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("compute_ranks: non-finite value at index " +
                                  std::to_string(i));
    }
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

ShiftedVector shift_to_positive(std::span<const double> values, double eps_fraction) {
  ShiftedVector out;
  out.values.assign(values.begin(), values.end());
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo > 0.0) return out;
  const double range = *hi - *lo;
  const double eps = eps_fraction * (range > 0.0 ? range : 1.0);
  out.shift = -*lo + eps;
  for (double& v : out.values) v += out.shift;
  return out;
}

RankedSample RankedSample::from_values(std::vector<double> values, Positivity positivity) {
  auto order = compute_ranks(values);  // also validates size and finiteness
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    const bool ok = positivity == Positivity::kAllowZero ? v >= 0.0 : v > 0.0;
    if (!ok) {
      throw std::invalid_argument(
          "RankedSample: entry " + std::to_string(i) + " is " + std::to_string(v) +
          "; the rank-graduation constructions require positive responses "
          "(use shift_to_positive for an explicit, disclosed shift)");
    }
    total += v;
  }
  if (total <= 0.0) {
    throw DegenerateError("RankedSample: all entries are zero");
  }
  return RankedSample(std::move(values), std::move(order), total);
}

PLCurve::PLCurve(std::vector<double> knot_values) : knots_(std::move(knot_values)) {
  if (knots_.size() < 2) {
    throw std::invalid_argument("PLCurve: need at least 2 knots");
  }
  if (knots_.front() != 0.0) {
    throw std::invalid_argument("PLCurve: knot 0 must be 0");
  }
}

double PLCurve::at(double t) const {
  const std::size_t n = segments();
  t = std::clamp(t, 0.0, 1.0);
  const double scaled = t * static_cast<double>(n);
  const auto seg = static_cast<std::size_t>(std::min(scaled, static_cast<double>(n - 1)));
  const double frac = scaled - static_cast<double>(seg);
  return knots_[seg] + frac * (knots_[seg + 1] - knots_[seg]);
}

PLCurve PLCurve::normalized() const {
  const double scale = total();
  if (scale == 0.0) {
    throw DegenerateError("PLCurve: cannot normalize a curve with total 0");
  }
  std::vector<double> scaled(knots_.size());
  for (std::size_t k = 0; k < knots_.size(); ++k) scaled[k] = knots_[k] / scale;
  return PLCurve(std::move(scaled));
}

PLCurve lorenz_curve(const RankedSample& sample) {
  std::vector<double> knots(sample.size() + 1, 0.0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    knots[i + 1] = knots[i] + sample.sorted_value(i);
  }
  return PLCurve(std::move(knots));
}

PLCurve dual_lorenz_curve(const RankedSample& sample) {
  const std::size_t n = sample.size();
  std::vector<double> knots(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    knots[i + 1] = knots[i] + sample.sorted_value(n - 1 - i);
  }
  return PLCurve(std::move(knots));
}

PLCurve concordance_curve(const RankedSample& y, std::span<const double> z) {
  if (z.size() != y.size()) {
    throw std::invalid_argument("concordance_curve: length mismatch (" +
                                std::to_string(y.size()) + " vs " +
                                std::to_string(z.size()) + ")");
  }
  const auto z_order = compute_ranks(z);
  std::vector<double> knots(y.size() + 1, 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    knots[i + 1] = knots[i] + y.values()[z_order[i]];
  }
  return PLCurve(std::move(knots));
}

double segment_power_mean(double d0, double d1, double p) {
  if (d0 > d1) std::swap(d0, d1);  // the ramp integrates the same either way
  if (!(d1 > 0.0)) return 0.0;
  const double q = p + 1.0;
  const double mid = 0.5 * (d0 + d1);
  const double rel_gap = (d1 - d0) / mid;
  if (rel_gap < 1e-3) {
    // Series in (gap/2mid)^2; the direct power difference would cancel.
    const double x2 = 0.25 * rel_gap * rel_gap;
    const double c2 = (q - 1.0) * (q - 2.0) / 6.0;
    const double c4 = c2 * (q - 3.0) * (q - 4.0) / 20.0;
    return std::pow(mid, p) * (1.0 + x2 * (c2 + c4 * x2));
  }
  return (std::pow(d1, q) - std::pow(d0, q)) / (q * (d1 - d0));
}

double pl_power_integral(const PLCurve& a, const PLCurve& b, double p) {
  if (p <= 0.0) {
    throw std::invalid_argument("pl_power_integral: p must be > 0");
  }
  if (a.knots().size() != b.knots().size()) {
    throw std::invalid_argument("pl_power_integral: curves live on different knot grids");
  }
  const std::size_t n = a.segments();
  const double scale = std::max({std::abs(a.total()), std::abs(b.total()), 1.0});
  const double tol = 1e-12 * scale;

  std::vector<double> diff(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    double d = b.knots()[k] - a.knots()[k];
    if (d < 0.0) {
      if (d < -tol) {
        throw std::invalid_argument("pl_power_integral: b < a at knot " + std::to_string(k));
      }
      d = 0.0;
    }
    diff[k] = d;
  }

  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += segment_power_mean(diff[k], diff[k + 1], p);
  }
  return sum / static_cast<double>(n);
}

double gini(const RankedSample& sample) {
  const PLCurve normalized = lorenz_curve(sample).normalized();
  // Trapezoid sums are exact for a piecewise-linear integrand.
  const auto& knots = normalized.knots();
  double area = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    area += 0.5 * (knots[k] + knots[k + 1]);
  }
  area /= static_cast<double>(normalized.segments());
  return 1.0 - 2.0 * area;
}

double pietra(const RankedSample& sample) {
  const PLCurve normalized = lorenz_curve(sample).normalized();
  const auto& knots = normalized.knots();
  const auto n = static_cast<double>(normalized.segments());
  double best = 0.0;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    best = std::max(best, std::abs(static_cast<double>(k) / n - knots[k]));
  }
  return best;
}

}  // namespace rgm
