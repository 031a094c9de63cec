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

#include "rgmetrics/synth.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rgmetrics/rng.hpp"

namespace rgm {

SynthLink synth_link_from_string(const std::string& name) {
  if (name == "linear") return SynthLink::kLinear;
  if (name == "nonlinear") return SynthLink::kNonlinear;
  throw std::invalid_argument("unknown link '" + name + "' (expected linear or nonlinear)");
}

Dataset synth_generate(const SynthSpec& spec) {
  if (spec.n < 4) throw std::invalid_argument("synth_generate: n must be >= 4");
  if (spec.n_features == 0) throw std::invalid_argument("synth_generate: need >= 1 feature");
  if (spec.n_irrelevant > spec.n_features) {
    throw std::invalid_argument("synth_generate: n_irrelevant exceeds n_features");
  }
  if (spec.n_targets == 0) throw std::invalid_argument("synth_generate: need >= 1 target");
  if (!(spec.correlation >= 0.0 && spec.correlation < 1.0)) {
    throw std::invalid_argument("synth_generate: correlation must be in [0,1)");
  }
  if (spec.noise_sd < 0.0) throw std::invalid_argument("synth_generate: negative noise sd");
  if (spec.sector_levels == 1) {
    throw std::invalid_argument("synth_generate: a categorical column needs >= 2 levels");
  }

  Rng rng(derive_seed(spec.seed, 0x73796e7468ULL));
  const std::size_t k = spec.n_features;
  const std::size_t n = spec.n;

  // Equicorrelated Gaussians: x = sqrt(rho) * common + sqrt(1-rho) * own.
  const double shared_w = std::sqrt(spec.correlation);
  const double own_w = std::sqrt(1.0 - spec.correlation);
  std::vector<std::vector<double>> x(k, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double shared = rng.normal();
    for (std::size_t j = 0; j < k; ++j) {
      x[j][i] = shared_w * shared + own_w * rng.normal();
    }
  }

  std::vector<std::size_t> sector_codes(n, 0);
  std::vector<double> sector_effect;
  if (spec.sector_levels > 0) {
    sector_effect.resize(spec.sector_levels);
    for (std::size_t level = 0; level < spec.sector_levels; ++level) {
      // Fixed spread of level effects, symmetric around zero.
      sector_effect[level] =
          0.8 * (static_cast<double>(level) - 0.5 * static_cast<double>(spec.sector_levels - 1));
    }
    for (std::size_t i = 0; i < n; ++i) sector_codes[i] = rng.below(spec.sector_levels);
  }

  const std::size_t relevant = k - spec.n_irrelevant;
  Dataset out;
  for (std::size_t j = 0; j < k; ++j) {
    Column col;
    col.name = "x" + std::to_string(j + 1);
    col.kind = ColumnKind::kContinuous;
    col.numeric = x[j];
    out.add_column(std::move(col));
  }
  if (spec.sector_levels > 0) {
    Column col;
    col.name = "sector";
    col.kind = ColumnKind::kCategorical;
    for (std::size_t level = 0; level < spec.sector_levels; ++level) {
      col.levels.push_back("S" + std::to_string(level + 1));
    }
    col.codes = sector_codes;
    out.add_column(std::move(col));
  }

  for (std::size_t t = 0; t < spec.n_targets; ++t) {
    std::vector<double> raw(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double index = 0.0;
      for (std::size_t j = 0; j < relevant; ++j) {
        // Coefficients vary per feature and per target but stay O(1).
        const double beta =
            1.0 + 0.5 * static_cast<double>(j) + 0.25 * static_cast<double>(t);
        index += beta * x[j][i];
      }
      if (spec.link == SynthLink::kNonlinear && relevant > 0) {
        index += 0.6 * (x[0][i] * x[0][i] - 1.0);
        if (relevant > 1) index += 0.8 * x[0][i] * x[1][i];
      }
      if (spec.sector_levels > 0) index += sector_effect[sector_codes[i]];
      raw[i] = index + spec.noise_sd * rng.normal();
    }

    // Standardize the index and squash into (0,1).
    double mean = 0.0;
    for (double v : raw) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : raw) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double denom = sd > 0.0 ? sd : 1.0;

    Column col;
    col.name = "y" + std::to_string(t + 1);
    col.kind = ColumnKind::kContinuous;
    col.numeric.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      col.numeric[i] = 1.0 / (1.0 + std::exp(-(raw[i] - mean) / denom));
    }
    out.add_column(std::move(col));
  }

  out.provenance = "synthetic seed=" + std::to_string(spec.seed);
  return out;
}

}  // namespace rgm
