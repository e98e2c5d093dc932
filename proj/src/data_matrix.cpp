#include "svddfraud/data_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace svddfraud {

DataMatrix::DataMatrix(std::size_t num_cols) : columns(default_column_names(num_cols)) {}

DataMatrix::DataMatrix(std::vector<std::string> names) : columns(std::move(names)) {}

void DataMatrix::append_row(std::span<const double> features) {
  if (features.size() != cols()) {
    throw std::invalid_argument("append_row: arity mismatch");
  }
  if (!labels.empty()) {
    throw std::invalid_argument("append_row: labeled matrix requires a label");
  }
  values.insert(values.end(), features.begin(), features.end());
}

void DataMatrix::append_row(std::span<const double> features, int label) {
  if (features.size() != cols()) {
    throw std::invalid_argument("append_row: arity mismatch");
  }
  if (labels.size() != rows()) {
    throw std::invalid_argument("append_row: cannot mix labeled and unlabeled rows");
  }
  values.insert(values.end(), features.begin(), features.end());
  labels.push_back(label);
}

DataMatrix DataMatrix::select(std::span<const std::size_t> indices) const {
  DataMatrix out(columns);
  out.column_maxima = column_maxima;
  out.values.reserve(indices.size() * cols());
  const bool has_labels = !labels.empty();
  if (has_labels) out.labels.reserve(indices.size());
  for (std::size_t idx : indices) {
    if (idx >= rows()) throw std::out_of_range("select: row index out of range");
    auto r = row(idx);
    out.values.insert(out.values.end(), r.begin(), r.end());
    if (has_labels) out.labels.push_back(labels[idx]);
  }
  return out;
}

std::size_t DataMatrix::count_label(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

std::vector<std::size_t> DataMatrix::indices_with_label(int label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) out.push_back(i);
  }
  return out;
}

std::vector<std::string> default_column_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("f" + std::to_string(i));
  return names;
}

}  // namespace svddfraud
