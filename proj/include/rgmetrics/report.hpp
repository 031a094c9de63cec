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

#include <string>

#include "rgmetrics/explain.hpp"
#include "rgmetrics/safe_eval.hpp"

namespace rgm {

// "mean (sd)" table with one row per metric and one column per model.
std::string safe_report_table(const SafeReport& report);

// Machine-readable report with full metadata. Doubles are emitted with
// shortest round-trip formatting, so parsing the file back yields an equal
// report and re-emitting an identical one is byte-stable.
std::string safe_report_json(const SafeReport& report);
SafeReport safe_report_from_json(const std::string& text);

// Writes table, json and per-metric plot series ("<fold> <value>" lines)
// under `directory`. Returns the paths written.
std::vector<std::string> emit_report(const SafeReport& report, const std::string& directory);

// Feature table: Shapley +- SD, Imp % +- SD.
std::string shapley_table(const ShapleyAnalysis& analysis);
std::string shapley_json(const ShapleyAnalysis& analysis);
std::vector<std::string> emit_shapley(const ShapleyAnalysis& analysis,
                                      const std::string& directory);

}  // namespace rgm
