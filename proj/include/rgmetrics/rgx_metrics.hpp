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

#include <functional>
#include <span>

#include "rgmetrics/rank_core.hpp"

namespace rgm {

// Rank graduation metric of order p. `value` is the fraction of the
// response's rank variability explained by the candidate ordering:
// 1 on concordant orderings, 0 on anti-concordant ones.
//
// numerator and denominator are the raw p-power areas computed on the
// curves normalized by the response total; they are kept so that audits can
// re-derive the exact ratio. value = 1 - numerator / denominator.
struct RgxResult {
  double value = 0.0;
  double p = 0.0;
  double numerator = 0.0;    // integral of |L_{Y,Z} - L_Y|^p, normalized curves
  double denominator = 0.0;  // integral of |L_Y^c - L_Y|^p, normalized curves
};

// Variability index of order p: the normalized L^p distance between the
// dual and plain Lorenz curves. Scale invariant; s_p(const) = 0; s_1 = Gini.
double s_p(const RankedSample& y, double p);

// Limit of s_p for p -> infinity: the largest normalized gap between the
// dual and plain Lorenz curves. Sandwiched between the Pietra index P and
// 2P.
double s_inf(const RankedSample& y);

// The RGX_p metric between a response y and a score vector z (any finite
// reals; only the ordering of z matters). Throws DegenerateError when y is
// constant: the denominator vanishes and no value is imputed.
RgxResult rgx_p(const RankedSample& y, std::span<const double> z, double p);

// Weighted variant: segment i of the unit interval carries weight
// proportional to the i-th order statistic of y, so discrepancies among the
// largest responses count more.
RgxResult wrgx_p(const RankedSample& y, std::span<const double> z, double p);

// Evaluates rgx_p on z and on f(z) after checking that f is strictly
// monotone on the sample (consistent sign of consecutive differences of f
// over sorted distinct z values). For increasing f the two results are
// identical; for decreasing f and p = 1 they sum to 1.
struct MonotoneCheck {
  RgxResult original;
  RgxResult transformed;
  bool increasing = true;
};
MonotoneCheck rgx_monotone_check(const RankedSample& y, std::span<const double> z,
                                 const std::function<double(double)>& f, double p);

}  // namespace rgm
