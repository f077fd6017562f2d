#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace devperf {

enum class ColumnKind { Numeric, Categorical };

/// One column of a Dataset. Numeric cells use NaN for missing; categorical
/// cells are dictionary codes (-1 = missing) into `categories`, which keeps
/// first-appearance order.
struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Categorical;
  std::vector<double> numeric;
  std::vector<int32_t> codes;
  std::vector<std::string> categories;

  bool is_missing(size_t row) const {
    return kind == ColumnKind::Numeric ? std::isnan(numeric[row]) : codes[row] < 0;
  }
  const std::string& category(size_t row) const {
    return categories[static_cast<size_t>(codes[row])];
  }
};

/// Typed tabular data with a designated categorical target column. Values
/// are immutable after load; everything downstream treats Dataset as a
/// shared read-only input.
struct Dataset {
  std::vector<Column> columns;
  size_t n_rows = 0;
  size_t target_index = 0;

  const Column& target() const { return columns[target_index]; }

  /// Distinct non-missing target values, first-appearance order.
  const std::vector<std::string>& class_labels() const { return target().categories; }

  std::vector<size_t> predictor_indices() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < columns.size(); ++i)
      if (i != target_index) out.push_back(i);
    return out;
  }

  std::optional<size_t> column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
      if (columns[i].name == name) return i;
    return std::nullopt;
  }
};

/// Sink for non-fatal events: rejected rows, degraded folds, clamped values.
struct Diagnostics {
  std::vector<std::string> warnings;
  uint64_t out_of_range_clamps = 0;

  void warn(std::string msg) { warnings.push_back(std::move(msg)); }
};

}  // namespace devperf
