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

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rgm {

enum class ColumnKind { kContinuous, kCategorical };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kContinuous;
  std::vector<double> numeric;          // continuous values
  std::vector<std::string> levels;      // categorical levels, first-appearance order
  std::vector<std::size_t> codes;       // categorical level index per row
  std::size_t size() const {
    return kind == ColumnKind::kContinuous ? numeric.size() : codes.size();
  }
};

// Rectangular, fully populated table. Ingestion rejects missing cells
// instead of imputing.
class Dataset {
 public:
  std::size_t rows() const { return rows_; }
  std::size_t columns() const { return columns_.size(); }
  const std::vector<Column>& all_columns() const { return columns_; }
  std::vector<std::string> column_names() const;
  bool has_column(const std::string& name) const;
  const Column& column(const std::string& name) const;
  void add_column(Column column);

  std::string provenance;

 private:
  std::vector<Column> columns_;
  std::map<std::string, std::size_t> index_;
  std::size_t rows_ = 0;
};

using Schema = std::map<std::string, ColumnKind>;

// Reads a UTF-8, comma-separated, '.'-decimal file with a header row.
// Columns named in the schema take the declared kind, everything else is
// parsed as continuous. A missing or unparsable cell fails with the row and
// column spelled out.
Dataset ingest_csv(const std::string& path, const Schema& schema = {});

void write_csv(const Dataset& data, const std::string& path);

// Per-column mean / sample sd (n-1) of continuous columns, taken over the
// given rows (the training fold). Zero-variance columns are an error.
struct ColumnStats {
  std::map<std::string, std::pair<double, double>> mean_sd;
};
ColumnStats compute_stats(const Dataset& data, std::span<const std::size_t> rows);

// z-scores continuous columns with the supplied statistics; categorical
// columns pass through. Using training-fold stats on test rows is the
// leakage-free convention.
Dataset standardize(const Dataset& data, const ColumnStats& stats);

// Design-matrix builder. Fitted on the training rows: continuous features
// are z-scored with training statistics, categorical features are one-hot
// encoded over the dataset-level level set. For linear models the first
// level is the reference and exactly duplicated encoded columns are pruned
// to keep the design full rank; the same pruned layout is applied to any
// rows encoded later. Encoded columns stay grouped by source feature so
// ablation and grouped Shapley treat a factor as one unit.
class FeatureEncoder {
 public:
  static FeatureEncoder fit(const Dataset& data, const std::vector<std::string>& features,
                            std::span<const std::size_t> train_rows, bool drop_first_level,
                            bool drop_duplicates);

  Eigen::MatrixXd encode(const Dataset& data, std::span<const std::size_t> rows) const;

  const std::vector<std::string>& features() const { return features_; }
  // Encoded column indices per source feature, post pruning.
  const std::vector<std::vector<std::size_t>>& groups() const { return groups_; }
  std::size_t encoded_width() const { return width_; }

 private:
  struct EncodedColumn {
    std::size_t feature = 0;       // index into features_
    bool categorical = false;
    std::size_t level = 0;         // categorical: level code
    double mean = 0.0;             // continuous: training stats
    double sd = 1.0;
  };

  std::vector<std::string> features_;
  std::vector<EncodedColumn> columns_;
  std::vector<std::vector<std::size_t>> groups_;
  std::size_t width_ = 0;
};

std::vector<double> target_vector(const Dataset& data, const std::string& name,
                                  std::span<const std::size_t> rows);
Eigen::MatrixXd target_matrix(const Dataset& data, const std::vector<std::string>& names,
                              std::span<const std::size_t> rows);

}  // namespace rgm
