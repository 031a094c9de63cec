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

#include "rgmetrics/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rgmetrics/errors.hpp"

namespace rgm {

std::vector<std::string> Dataset::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns_.size());
  for (const auto& c : columns_) names.push_back(c.name);
  return names;
}

bool Dataset::has_column(const std::string& name) const { return index_.count(name) > 0; }

const Column& Dataset::column(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) {
    throw DataError("dataset has no column named '" + name + "'");
  }
  return columns_[it->second];
}

void Dataset::add_column(Column column) {
  if (index_.count(column.name) > 0) {
    throw DataError("duplicate column name '" + column.name + "'");
  }
  if (!columns_.empty() && column.size() != rows_) {
    throw DataError("column '" + column.name + "' has " + std::to_string(column.size()) +
                    " rows, expected " + std::to_string(rows_));
  }
  rows_ = column.size();
  index_[column.name] = columns_.size();
  columns_.push_back(std::move(column));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Dataset ingest_csv(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw IoError("ingest_csv: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError("ingest_csv: '" + path + "' has no header row");
  std::vector<std::string> header = split_csv_line(line);
  for (auto& h : header) h = trimmed(h);
  if (header.empty()) throw DataError("ingest_csv: empty header row");

  std::vector<Column> columns(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) {
    columns[j].name = header[j];
    const auto it = schema.find(header[j]);
    columns[j].kind = it != schema.end() ? it->second : ColumnKind::kContinuous;
  }
  for (const auto& [name, kind] : schema) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw DataError("ingest_csv: schema names column '" + name + "' absent from '" + path + "'");
    }
  }

  std::size_t row = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (trimmed(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw DataError("ingest_csv: row " + std::to_string(row) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));
    }
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string cell = trimmed(cells[j]);
      if (cell.empty()) {
        throw DataError("ingest_csv: missing value at row " + std::to_string(row) +
                        ", column '" + header[j] + "'");
      }
      Column& col = columns[j];
      if (col.kind == ColumnKind::kContinuous) {
        try {
          std::size_t used = 0;
          const double value = std::stod(cell, &used);
          if (used != cell.size() || !std::isfinite(value)) throw std::invalid_argument(cell);
          col.numeric.push_back(value);
        } catch (const std::exception&) {
          throw DataError("ingest_csv: cannot parse '" + cell + "' as a number at row " +
                          std::to_string(row) + ", column '" + header[j] + "'");
        }
      } else {
        const auto it = std::find(col.levels.begin(), col.levels.end(), cell);
        if (it == col.levels.end()) {
          col.codes.push_back(col.levels.size());
          col.levels.push_back(cell);
        } else {
          col.codes.push_back(static_cast<std::size_t>(it - col.levels.begin()));
        }
      }
    }
  }

  Dataset data;
  for (auto& col : columns) data.add_column(std::move(col));
  if (data.rows() == 0) throw DataError("ingest_csv: '" + path + "' has no data rows");
  data.provenance = "csv:" + path;
  return data;
}

void write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_csv: cannot open '" + path + "' for writing");
  const auto& columns = data.all_columns();
  for (std::size_t j = 0; j < columns.size(); ++j) {
    out << (j == 0 ? "" : ",") << columns[j].name;
  }
  out << "\n";
  char buffer[40];
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j > 0) out << ",";
      if (columns[j].kind == ColumnKind::kContinuous) {
        std::snprintf(buffer, sizeof(buffer), "%.17g", columns[j].numeric[i]);
        out << buffer;
      } else {
        out << columns[j].levels[columns[j].codes[i]];
      }
    }
    out << "\n";
  }
  if (!out) throw IoError("write_csv: write to '" + path + "' failed");
}

ColumnStats compute_stats(const Dataset& data, std::span<const std::size_t> rows) {
  if (rows.size() < 2) throw std::invalid_argument("compute_stats: need at least 2 rows");
  ColumnStats stats;
  for (const auto& col : data.all_columns()) {
    if (col.kind != ColumnKind::kContinuous) continue;
    double mean = 0.0;
    for (std::size_t r : rows) mean += col.numeric[r];
    mean /= static_cast<double>(rows.size());
    double ss = 0.0;
    for (std::size_t r : rows) {
      const double d = col.numeric[r] - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(rows.size() - 1));
    if (!(sd > 0.0)) {
      throw DegenerateError("compute_stats: column '" + col.name +
                            "' is constant on the supplied rows");
    }
    stats.mean_sd[col.name] = {mean, sd};
  }
  return stats;
}

Dataset standardize(const Dataset& data, const ColumnStats& stats) {
  Dataset out;
  out.provenance = data.provenance;
  for (const auto& col : data.all_columns()) {
    Column copy = col;
    if (col.kind == ColumnKind::kContinuous) {
      const auto it = stats.mean_sd.find(col.name);
      if (it == stats.mean_sd.end()) {
        throw std::invalid_argument("standardize: no statistics for column '" + col.name + "'");
      }
      const auto [mean, sd] = it->second;
      for (double& v : copy.numeric) v = (v - mean) / sd;
    }
    out.add_column(std::move(copy));
  }
  return out;
}

FeatureEncoder FeatureEncoder::fit(const Dataset& data, const std::vector<std::string>& features,
                                   std::span<const std::size_t> train_rows, bool drop_first_level,
                                   bool drop_duplicates) {
  if (features.empty()) throw std::invalid_argument("FeatureEncoder: empty feature list");
  FeatureEncoder enc;
  enc.features_ = features;

  for (std::size_t f = 0; f < features.size(); ++f) {
    const Column& col = data.column(features[f]);
    if (col.kind == ColumnKind::kContinuous) {
      double mean = 0.0;
      for (std::size_t r : train_rows) mean += col.numeric[r];
      mean /= static_cast<double>(train_rows.size());
      double ss = 0.0;
      for (std::size_t r : train_rows) {
        const double d = col.numeric[r] - mean;
        ss += d * d;
      }
      const double sd = std::sqrt(ss / static_cast<double>(train_rows.size() - 1));
      if (!(sd > 0.0)) {
        throw DegenerateError("FeatureEncoder: column '" + col.name +
                              "' is constant on the training rows");
      }
      enc.columns_.push_back({f, false, 0, mean, sd});
    } else {
      std::vector<bool> seen(col.levels.size(), false);
      for (std::size_t r : train_rows) seen[col.codes[r]] = true;
      for (std::size_t level = 0; level < col.levels.size(); ++level) {
        if (drop_first_level && level == 0) continue;
        if (!seen[level]) continue;  // absent in training: an all-zero column
        enc.columns_.push_back({f, true, level, 0.0, 1.0});
      }
    }
  }

  if (drop_duplicates) {
    // Exact duplicates in the training design would defeat the full-rank
    // precondition of the linear fit; keep the first of each duplicate set.
    const Eigen::MatrixXd probe = [&] {
      FeatureEncoder tmp = enc;
      tmp.width_ = tmp.columns_.size();
      return tmp.encode(data, train_rows);
    }();
    std::vector<EncodedColumn> kept;
    std::vector<Eigen::Index> kept_index;
    for (Eigen::Index j = 0; j < probe.cols(); ++j) {
      bool duplicate = false;
      for (const Eigen::Index k : kept_index) {
        if (probe.col(j) == probe.col(k)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        kept.push_back(enc.columns_[static_cast<std::size_t>(j)]);
        kept_index.push_back(j);
      }
    }
    enc.columns_ = std::move(kept);
  }

  enc.width_ = enc.columns_.size();
  if (enc.width_ == 0) throw DegenerateError("FeatureEncoder: no usable encoded columns");
  enc.groups_.assign(features.size(), {});
  for (std::size_t j = 0; j < enc.columns_.size(); ++j) {
    enc.groups_[enc.columns_[j].feature].push_back(j);
  }
  return enc;
}

Eigen::MatrixXd FeatureEncoder::encode(const Dataset& data,
                                       std::span<const std::size_t> rows) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(columns_.size()));
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const EncodedColumn& spec = columns_[j];
    const Column& col = data.column(features_[spec.feature]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t r = rows[i];
      double value = 0.0;
      if (spec.categorical) {
        value = col.codes[r] == spec.level ? 1.0 : 0.0;
      } else {
        value = (col.numeric[r] - spec.mean) / spec.sd;
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
    }
  }
  return out;
}

std::vector<double> target_vector(const Dataset& data, const std::string& name,
                                  std::span<const std::size_t> rows) {
  const Column& col = data.column(name);
  if (col.kind != ColumnKind::kContinuous) {
    throw DataError("target column '" + name + "' must be continuous");
  }
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(col.numeric[r]);
  return out;
}

Eigen::MatrixXd target_matrix(const Dataset& data, const std::vector<std::string>& names,
                              std::span<const std::size_t> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto values = target_vector(data, names[j], rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i];
    }
  }
  return out;
}

}  // namespace rgm
