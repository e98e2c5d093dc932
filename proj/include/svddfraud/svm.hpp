#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "svddfraud/data_matrix.hpp"
#include "svddfraud/kernel.hpp"

namespace svddfraud {

struct SvmConfig {
  KernelSpec kernel;
  double box_c = 1.0;
  double solver_tolerance = 1e-3;
  std::size_t max_iterations = 10'000'000;
  /// Multiplier on box_c for the fraud class (label 1).
  double positive_weight = 1.0;
  std::size_t cache_bytes = KernelColumns::kDefaultBudgetBytes;

  void validate() const;
};

/// Soft-margin C-SVC. Label 1 (fraud) is the +1 class.
struct SvmModel {
  KernelSpec kernel;
  std::size_t dim = 0;
  std::vector<double> support_rows;
  /// alpha_i * y_i for every support vector.
  std::vector<double> signed_alphas;
  std::vector<std::size_t> support_indices;
  double bias = 0.0;
  double box_c = 1.0;
  std::size_t training_rows = 0;
  std::size_t iterations = 0;

  std::size_t support_count() const { return signed_alphas.size(); }
  std::span<const double> support_row(std::size_t i) const {
    return {support_rows.data() + i * dim, dim};
  }
};

SvmModel train_svm(const DataMatrix& data, const SvmConfig& config);

/// sum_i alpha_i y_i K(x_i, z) + bias. Positive means fraud.
double svm_decision(const SvmModel& model, std::span<const double> z);

std::vector<int> svm_predict(const SvmModel& model, const DataMatrix& data);

/// sum_i alpha_i - 0.5 sum_ij alpha_i alpha_j y_i y_j K_ij.
double dual_objective(const SvmModel& model);

struct FoldMetrics {
  std::size_t holdout_rows = 0;
  /// NaN when the holdout fold holds a single class.
  double auc = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

struct CrossValidationResult {
  std::vector<std::vector<std::size_t>> folds;
  std::vector<FoldMetrics> per_fold;
  /// Mean over folds with a defined AUC.
  double mean_auc = 0.0;
  double mean_f_measure = 0.0;
  /// AUC of all out-of-fold scores pooled together.
  double pooled_auc = 0.0;
};

/// Shuffles once with `seed` and assigns rows to k groups whose sizes
/// differ by at most one. Stratified assignment deals each class round
/// robin so every fold receives its share of fraud rows.
std::vector<std::vector<std::size_t>> make_folds(std::span<const int> labels, std::size_t k,
                                                 std::uint64_t seed, bool stratified);

CrossValidationResult kfold_cross_validate(const DataMatrix& data, const SvmConfig& config,
                                           std::size_t k, std::uint64_t seed, bool stratified = true);

}  // namespace svddfraud
