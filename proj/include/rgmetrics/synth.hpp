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

#include <cstdint>
#include <string>

#include "rgmetrics/dataset.hpp"

namespace rgm {

enum class SynthLink { kLinear, kNonlinear };

// Deterministic benchmark data with known feature relevances. Continuous
// features x1..x<n_features> are equicorrelated Gaussians; the last
// n_irrelevant of them get zero coefficient so their true contribution is
// nil. Targets are squashed through a logistic map into (0,1), mimicking
// bounded scores; the map is monotone so orderings are exactly those of the
// underlying (noisy) index. An optional categorical sector column with
// additive level effects can be included.
struct SynthSpec {
  std::size_t n = 500;
  std::size_t n_features = 5;
  std::size_t n_irrelevant = 0;
  double correlation = 0.3;
  SynthLink link = SynthLink::kLinear;
  double noise_sd = 0.0;
  std::size_t n_targets = 1;
  std::size_t sector_levels = 0;  // 0: no categorical column
  std::uint64_t seed = 0;
};

SynthLink synth_link_from_string(const std::string& name);

Dataset synth_generate(const SynthSpec& spec);

}  // namespace rgm
