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

#include "rgmetrics/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rgmetrics/errors.hpp"

namespace rgm {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string cell(double mean, double sd) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3f (%.3f)", mean, sd);
  return buffer;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string sanitized(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_')) c = '_';
  }
  return out;
}

}  // namespace

std::string safe_report_table(const SafeReport& report) {
  std::vector<std::string> metric_names;
  for (const auto& summary : report.models.front().metrics) {
    metric_names.push_back(summary.name);
  }

  std::size_t name_width = 6;
  for (const auto& name : metric_names) name_width = std::max(name_width, name.size());

  std::ostringstream out;
  out << "SAFE metrics";
  if (!report.targets.empty()) {
    out << " for";
    for (const auto& t : report.targets) out << " " << t;
  }
  out << " (" << report.folds << "-fold CV, p=" << report.p << ", seed=" << report.seed
      << ", perturb=" << report.perturb_scale;
  if (report.whitening != "none") out << ", whitening=" << report.whitening;
  out << ")\n";
  out << "Standard deviations in parentheses; sd convention: " << report.sd_convention << "\n\n";

  constexpr std::size_t kCell = 16;
  out << std::string(name_width, ' ');
  for (const auto& model : report.models) {
    const std::string label = to_string(model.kind);
    out << "  " << label << std::string(kCell - std::min(kCell, label.size()), ' ');
  }
  out << "\n";
  for (std::size_t m = 0; m < metric_names.size(); ++m) {
    out << metric_names[m]
        << std::string(name_width - metric_names[m].size(), ' ');
    for (const auto& model : report.models) {
      const auto& s = model.metrics[m];
      const std::string c = cell(s.mean, s.sd);
      out << "  " << c << std::string(kCell - std::min(kCell, c.size()), ' ');
    }
    out << "\n";
  }
  return out.str();
}

namespace {

ordered_json summary_to_json(const MetricSummary& s) {
  ordered_json node;
  node["name"] = s.name;
  node["per_fold"] = s.per_fold;
  node["mean"] = s.mean;
  node["sd"] = s.sd;
  return node;
}

MetricSummary summary_from_json(const ordered_json& node) {
  MetricSummary s;
  s.name = node.at("name").get<std::string>();
  s.per_fold = node.at("per_fold").get<std::vector<double>>();
  s.mean = node.at("mean").get<double>();
  s.sd = node.at("sd").get<double>();
  return s;
}

}  // namespace

std::string safe_report_json(const SafeReport& report) {
  ordered_json doc;
  doc["kind"] = "safe_report";
  doc["p"] = report.p;
  doc["seed"] = report.seed;
  doc["folds"] = report.folds;
  doc["perturb_scale"] = report.perturb_scale;
  doc["whitening"] = report.whitening;
  doc["sd_convention"] = report.sd_convention;
  doc["targets"] = report.targets;
  doc["features"] = report.features;
  doc["lambdas_per_fold"] = report.lambdas_per_fold;
  ordered_json shifts = ordered_json::array();
  for (const auto& s : report.shifts) {
    ordered_json node;
    node["fold"] = s.fold;
    node["model"] = s.model;
    node["metric"] = s.metric;
    node["shift"] = s.shift;
    shifts.push_back(std::move(node));
  }
  doc["shifts"] = std::move(shifts);
  ordered_json models = ordered_json::array();
  for (const auto& model : report.models) {
    ordered_json node;
    node["model"] = to_string(model.kind);
    ordered_json metrics = ordered_json::array();
    for (const auto& s : model.metrics) metrics.push_back(summary_to_json(s));
    node["metrics"] = std::move(metrics);
    models.push_back(std::move(node));
  }
  doc["models"] = std::move(models);
  return doc.dump(2) + "\n";
}

SafeReport safe_report_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("safe_report_from_json: malformed json: ") + e.what());
  }
  SafeReport report;
  report.p = doc.at("p").get<double>();
  report.seed = doc.at("seed").get<std::uint64_t>();
  report.folds = doc.at("folds").get<int>();
  report.perturb_scale = doc.at("perturb_scale").get<double>();
  report.whitening = doc.at("whitening").get<std::string>();
  report.sd_convention = doc.at("sd_convention").get<std::string>();
  report.targets = doc.at("targets").get<std::vector<std::string>>();
  report.features = doc.at("features").get<std::vector<std::string>>();
  report.lambdas_per_fold = doc.at("lambdas_per_fold").get<std::vector<std::vector<double>>>();
  for (const auto& node : doc.at("shifts")) {
    ShiftRecord s;
    s.fold = node.at("fold").get<int>();
    s.model = node.at("model").get<std::string>();
    s.metric = node.at("metric").get<std::string>();
    s.shift = node.at("shift").get<double>();
    report.shifts.push_back(std::move(s));
  }
  for (const auto& node : doc.at("models")) {
    ModelReport model;
    model.kind = model_kind_from_string(node.at("model").get<std::string>());
    for (const auto& m : node.at("metrics")) model.metrics.push_back(summary_from_json(m));
    report.models.push_back(std::move(model));
  }
  return report;
}

std::vector<std::string> emit_report(const SafeReport& report, const std::string& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("emit_report: cannot create directory '" + directory + "'");

  std::vector<std::string> written;
  const std::string table_path = directory + "/safe_report.txt";
  write_file(table_path, safe_report_table(report));
  written.push_back(table_path);

  const std::string json_path = directory + "/safe_report.json";
  write_file(json_path, safe_report_json(report));
  written.push_back(json_path);

  const std::string series_dir = directory + "/series";
  std::filesystem::create_directories(series_dir, ec);
  if (ec) throw IoError("emit_report: cannot create directory '" + series_dir + "'");
  char buffer[64];
  for (const auto& model : report.models) {
    for (const auto& summary : model.metrics) {
      std::ostringstream series;
      for (std::size_t fold = 0; fold < summary.per_fold.size(); ++fold) {
        std::snprintf(buffer, sizeof(buffer), "%zu %.17g\n", fold + 1, summary.per_fold[fold]);
        series << buffer;
      }
      const std::string path =
          series_dir + "/" + to_string(model.kind) + "_" + sanitized(summary.name) + ".dat";
      write_file(path, series.str());
      written.push_back(path);
    }
  }
  return written;
}

std::string shapley_table(const ShapleyAnalysis& analysis) {
  std::size_t name_width = 7;
  for (const auto& f : analysis.features) name_width = std::max(name_width, f.size());

  std::ostringstream out;
  out << "Shapley importance (" << to_string(analysis.model) << ", M=" << analysis.permutations
      << ", seed=" << analysis.seed << ", fold-aggregated)\n\n";
  out << "Feature" << std::string(name_width - 7, ' ') << "  Shapley +- SD        Imp % +- SD\n";
  char buffer[96];
  for (std::size_t j = 0; j < analysis.features.size(); ++j) {
    std::snprintf(buffer, sizeof(buffer), "%-*s  %.4f +- %.4f    %5.1f +- %4.1f\n",
                  static_cast<int>(name_width), analysis.features[j].c_str(),
                  analysis.shapley_mean[j], analysis.shapley_sd[j], analysis.importance_mean[j],
                  analysis.importance_sd[j]);
    out << buffer;
  }
  return out.str();
}

std::string shapley_json(const ShapleyAnalysis& analysis) {
  ordered_json doc;
  doc["kind"] = "shapley_analysis";
  doc["model"] = to_string(analysis.model);
  doc["permutations"] = analysis.permutations;
  doc["seed"] = analysis.seed;
  doc["features"] = analysis.features;
  doc["shapley_per_fold"] = analysis.shapley_per_fold;
  doc["importance_per_fold"] = analysis.importance_per_fold;
  doc["shapley_mean"] = analysis.shapley_mean;
  doc["shapley_sd"] = analysis.shapley_sd;
  doc["importance_mean"] = analysis.importance_mean;
  doc["importance_sd"] = analysis.importance_sd;
  return doc.dump(2) + "\n";
}

std::vector<std::string> emit_shapley(const ShapleyAnalysis& analysis,
                                      const std::string& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("emit_shapley: cannot create directory '" + directory + "'");
  std::vector<std::string> written;
  const std::string table_path = directory + "/shapley_" + to_string(analysis.model) + ".txt";
  write_file(table_path, shapley_table(analysis));
  written.push_back(table_path);
  const std::string json_path = directory + "/shapley_" + to_string(analysis.model) + ".json";
  write_file(json_path, shapley_json(analysis));
  written.push_back(json_path);
  return written;
}

}  // namespace rgm
