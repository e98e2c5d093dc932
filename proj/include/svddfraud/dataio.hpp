#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "svddfraud/data_matrix.hpp"

namespace svddfraud::dataio {

/// How to read a delimiter-separated table with a header row.
struct TableSchema {
  char delimiter = ',';
  /// Feature columns in output order. Empty means "every column except the
  /// label column".
  std::vector<std::string> features;
  /// Label column holding 0/1. Empty means the table is unlabeled.
  std::string label_column = "label";
  /// Columns whose values are strings mapped to small integer indices
  /// (sorted distinct values -> 0, 1, 2, ...).
  std::vector<std::string> categorical;
};

/// PaySim columns: step, type, amount and the four balance columns as
/// features, isFraud as label. Account-name columns are not read.
TableSchema paysim_schema();

DataMatrix load_table(const std::filesystem::path& path, const TableSchema& schema);

/// Writes features plus a trailing `label` column (when labeled) with
/// round-trip precision, so reloading reproduces every double exactly.
void write_table(const std::filesystem::path& path, const DataMatrix& data, char delimiter = ',');

/// Divides every column by its maximum absolute value. Columns whose
/// maximum is 0 are left unchanged; the maxima are stored on the result.
DataMatrix normalize_by_column_max(const DataMatrix& data);

/// Scales with previously recorded maxima. Values may exceed 1.
DataMatrix apply_stored_normalization(const DataMatrix& data, const std::vector<double>& maxima);

/// Column maxima with names, one `name value` pair per line after a
/// versioned header.
void write_maxima(const std::filesystem::path& path, const DataMatrix& normalized);
std::vector<double> read_maxima(const std::filesystem::path& path);

struct SplitSpec {
  double test_fraction = 0.3;
  double train_target_fraction = 0.1;
  /// Share of each class of the two-class training rows (excluding the
  /// one-class training rows) reserved for validation during tuning.
  double validation_fraction = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Row indices refer to the input matrix; each list is sorted ascending.
struct ProtocolSplit {
  DataMatrix svdd_train;
  DataMatrix svm_train;
  DataMatrix validation;
  DataMatrix test;
  std::vector<std::size_t> svdd_indices;
  std::vector<std::size_t> svm_indices;
  std::vector<std::size_t> validation_indices;
  std::vector<std::size_t> test_indices;
};

/// Test rows are a uniform sample of test_fraction of all rows; the
/// two-class training partition is everything else; the one-class training
/// set is train_target_fraction of that partition's non-fraud rows; the
/// validation slice is drawn from the two-class partition minus the
/// one-class rows.
ProtocolSplit split_for_protocol(const DataMatrix& data, const SplitSpec& spec);

/// Sample of `count` rows keeping the class proportions, with at least one
/// row of each class present in the input. Indices sorted ascending.
std::vector<std::size_t> stratified_subsample(const DataMatrix& data, std::size_t count, std::uint64_t seed);

enum class Shape { rings, moons, gaussians };

Shape parse_shape(const std::string& name);
std::string to_string(Shape shape);

/// Two labeled 2-D classes with distinct, connected regions. Class 0 rows
/// come first. `noise` is a Gaussian standard deviation.
DataMatrix generate_two_class_shapes(std::size_t n_per_class, Shape shape, double noise,
                                     std::uint64_t seed);

struct FraudLikeSpec {
  std::size_t rows = 20000;
  double fraud_fraction = 0.01;
  std::size_t dims = 2;
  /// Non-fraud rows: isotropic Gaussian around the middle of the box.
  double core_sd = 0.7;
  /// Fraud rows: uniform over [0, box_size]^dims.
  double box_size = 10.0;
  /// Number of majority modes, spread evenly on a circle around the box
  /// center (one mode sits at the center).
  std::size_t clusters = 1;
  /// Student-t degrees of freedom for the majority noise; 0 means Gaussian.
  double tail_dof = 0.0;
  std::uint64_t seed = 0;
};

/// Dense majority class plus sparse anomalies, rows in random label order.
DataMatrix generate_fraud_like(const FraudLikeSpec& spec);

/// Called with the path of every table or maxima file read through this
/// module. Used to audit which stages touch which files.
using ReadObserver = std::function<void(const std::filesystem::path&)>;
void set_read_observer(ReadObserver observer);

}  // namespace svddfraud::dataio
