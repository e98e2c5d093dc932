#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace svddfraud {

/// Row-major table of real-valued feature rows with optional 0/1 labels
/// (1 = fraud). `column_maxima` is filled by normalization and reused to
/// scale held-out data.
struct DataMatrix {
  std::vector<std::string> columns;
  std::vector<double> values;
  std::vector<int> labels;
  std::vector<double> column_maxima;

  DataMatrix() = default;
  explicit DataMatrix(std::size_t num_cols);
  DataMatrix(std::vector<std::string> names);

  std::size_t cols() const { return columns.size(); }
  std::size_t rows() const { return cols() == 0 ? 0 : values.size() / cols(); }
  bool empty() const { return values.empty(); }
  bool labeled() const { return !labels.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols(), cols()};
  }
  std::span<double> row(std::size_t i) { return {values.data() + i * cols(), cols()}; }

  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }

  void append_row(std::span<const double> features);
  void append_row(std::span<const double> features, int label);

  /// Copies the listed rows, in the listed order, into a new matrix that
  /// shares column names and stored maxima.
  DataMatrix select(std::span<const std::size_t> indices) const;

  std::size_t count_label(int label) const;
  std::vector<std::size_t> indices_with_label(int label) const;
};

/// Default feature names f0..f{n-1}.
std::vector<std::string> default_column_names(std::size_t n);

}  // namespace svddfraud
