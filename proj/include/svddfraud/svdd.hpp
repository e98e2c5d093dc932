#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "svddfraud/data_matrix.hpp"
#include "svddfraud/kernel.hpp"

namespace svddfraud {

struct SvddConfig {
  KernelSpec kernel;
  /// Fraction of target objects allowed outside the sphere. Maps to the
  /// box constraint C = 1 / (N * fracrej).
  double fracrej = 0.05;
  /// Explicit box constraint; overrides the fracrej mapping when set.
  std::optional<double> box_c;
  /// KKT tolerance, in squared kernel-space distance units.
  double solver_tolerance = 1e-6;
  std::size_t max_iterations = 10'000'000;
  std::size_t cache_bytes = KernelColumns::kDefaultBudgetBytes;

  void validate() const;
};

/// Minimum enclosing hypersphere in kernel space.
struct SvddModel {
  KernelSpec kernel;
  std::size_t dim = 0;
  /// Flattened support rows, `dim` values each.
  std::vector<double> support_rows;
  std::vector<double> alphas;
  /// Row index of each support vector in the training matrix.
  std::vector<std::size_t> support_indices;
  double box_c = 1.0;
  double radius_sq = 0.0;
  /// sum_ij alpha_i alpha_j K(x_i, x_j) over the support vectors.
  double offset_term = 0.0;
  std::size_t training_rows = 0;
  std::size_t iterations = 0;

  std::size_t support_count() const { return alphas.size(); }
  std::span<const double> support_row(std::size_t i) const {
    return {support_rows.data() + i * dim, dim};
  }
};

/// Solves  max sum_i a_i K_ii - sum_ij a_i a_j K_ij  s.t. sum a = 1,
/// 0 <= a_i <= C, and sets R^2 to the mean distance of the unbounded
/// support vectors (or the largest support-vector distance when every
/// coefficient sits on a bound).
SvddModel train_svdd(const DataMatrix& data, const SvddConfig& config);

/// ||phi(z) - a||^2 = K(z, z) - 2 sum_i a_i K(x_i, z) + offset_term.
double kernel_distance_sq(const SvddModel& model, std::span<const double> z);

/// radius_sq - kernel_distance_sq(z): non-negative inside the sphere
/// (accepted as target / non-fraud), negative outside (flagged as fraud).
double decision_score(const SvddModel& model, std::span<const double> z);

/// 1 (fraud) iff decision_score < 0.
std::vector<int> classify(const SvddModel& model, const DataMatrix& data);

/// Dual objective at the model's coefficients.
double dual_objective(const SvddModel& model);

}  // namespace svddfraud
