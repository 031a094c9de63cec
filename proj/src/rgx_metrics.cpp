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

#include "rgmetrics/rgx_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rgmetrics/errors.hpp"

namespace rgm {

namespace {

// Normalized knot gaps between the curve induced by `order` and the Lorenz
// curve of y. Computed through the multiset difference of the two prefix
// index sets: whenever the prefixes contain the same indices the gap is an
// empty sum, i.e. exactly zero. Plain cumulative-sum subtraction would leave
// summation noise there, which |gap|^p amplifies brutally for p < 1.
std::vector<double> normalized_gaps(const RankedSample& y,
                                    std::span<const std::size_t> order) {
  const auto& y_order = y.order();
  const std::size_t n = y.size();
  std::vector<double> gaps(n + 1, 0.0);
  std::vector<signed char> state(n, 0);  // +1 in `order` prefix only, -1 in y prefix only
  std::vector<std::size_t> active;

  auto flip = [&](std::size_t index, int delta) {
    const bool was_active = state[index] != 0;
    state[index] = static_cast<signed char>(state[index] + delta);
    const bool is_active = state[index] != 0;
    if (!was_active && is_active) {
      active.push_back(index);
    } else if (was_active && !is_active) {
      active.erase(std::find(active.begin(), active.end(), index));
    }
  };

  for (std::size_t k = 0; k < n; ++k) {
    flip(order[k], +1);
    flip(y_order[k], -1);
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t index : active) {
      if (state[index] > 0) {
        plus += y.values()[index];
      } else {
        minus += y.values()[index];
      }
    }
    gaps[k + 1] = std::max(plus - minus, 0.0) / y.total();
  }
  gaps[n] = 0.0;  // prefix sets coincide at the top knot
  return gaps;
}

std::vector<double> concordance_gaps(const RankedSample& y, std::span<const double> z) {
  if (z.size() != y.size()) {
    throw std::invalid_argument("rgx: y and z must have the same length");
  }
  return normalized_gaps(y, compute_ranks(z));
}

std::vector<double> dual_gaps(const RankedSample& y) {
  std::vector<std::size_t> reversed(y.order().rbegin(), y.order().rend());
  return normalized_gaps(y, reversed);
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

void require_positive_p(double p, const char* who) {
  if (p <= 0.0) {
    throw std::invalid_argument(std::string(who) + ": p must be > 0");
  }
}

void require_nonconstant(const RankedSample& y, const char* who) {
  if (y.sorted_value(0) == y.sorted_value(y.size() - 1)) {
    throw DegenerateError(std::string(who) +
                          ": constant response has zero rank variability; "
                          "the metric is undefined");
  }
}

}  // namespace

double s_p(const RankedSample& y, double p) {
  require_positive_p(p, "s_p");
  const std::vector<double> gaps = dual_gaps(y);
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < gaps.size(); ++k) {
    integral += segment_power_mean(gaps[k], gaps[k + 1], p);
  }
  integral /= static_cast<double>(y.size());
  return std::pow(integral, 1.0 / p);
}

double s_inf(const RankedSample& y) {
  const std::vector<double> gaps = dual_gaps(y);
  return *std::max_element(gaps.begin(), gaps.end());
}

RgxResult rgx_p(const RankedSample& y, std::span<const double> z, double p) {
  require_positive_p(p, "rgx_p");
  require_nonconstant(y, "rgx_p");
  const std::vector<double> num_gaps = concordance_gaps(y, z);
  const std::vector<double> den_gaps = dual_gaps(y);
  const std::size_t n = y.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    numerator += inv_n * segment_power_mean(num_gaps[k], num_gaps[k + 1], p);
    denominator += inv_n * segment_power_mean(den_gaps[k], den_gaps[k + 1], p);
  }

  RgxResult out;
  out.p = p;
  out.numerator = numerator;
  out.denominator = denominator;
  out.value = clamp_unit(1.0 - numerator / denominator);
  return out;
}

RgxResult wrgx_p(const RankedSample& y, std::span<const double> z, double p) {
  require_positive_p(p, "wrgx_p");
  require_nonconstant(y, "wrgx_p");
  const std::vector<double> num_gaps = concordance_gaps(y, z);
  const std::vector<double> den_gaps = dual_gaps(y);
  const std::size_t n = y.size();

  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    // Segment k carries mass Y_{r_{k+1}} / sum(Y); the density is constant
    // within the segment so the closed form only gains a weight factor.
    const double weight = y.sorted_value(k) / y.total();
    numerator += weight * segment_power_mean(num_gaps[k], num_gaps[k + 1], p);
    denominator += weight * segment_power_mean(den_gaps[k], den_gaps[k + 1], p);
  }

  RgxResult out;
  out.p = p;
  out.numerator = numerator;
  out.denominator = denominator;
  out.value = clamp_unit(1.0 - numerator / denominator);
  return out;
}

MonotoneCheck rgx_monotone_check(const RankedSample& y, std::span<const double> z,
                                 const std::function<double(double)>& f, double p) {
  std::vector<double> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 2) {
    throw DegenerateError("rgx_monotone_check: z is constant, monotonicity is vacuous");
  }

  int direction = 0;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double diff = f(sorted[i + 1]) - f(sorted[i]);
    const int sign = diff > 0.0 ? 1 : diff < 0.0 ? -1 : 0;
    if (sign == 0 || (direction != 0 && sign != direction)) {
      throw std::invalid_argument(
          "rgx_monotone_check: f is not strictly monotone on the sample");
    }
    direction = sign;
  }

  std::vector<double> transformed(z.size());
  std::transform(z.begin(), z.end(), transformed.begin(), f);

  MonotoneCheck out;
  out.original = rgx_p(y, z, p);
  out.transformed = rgx_p(y, transformed, p);
  out.increasing = direction > 0;
  return out;
}

}  // namespace rgm
