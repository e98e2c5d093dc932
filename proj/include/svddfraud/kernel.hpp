#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "svddfraud/data_matrix.hpp"

namespace svddfraud {

enum class KernelKind { rbf, linear };

/// RBF uses K(a, b) = exp(-||a - b||^2 / sigma^2), i.e. the denominator is
/// sigma^2 and not 2 sigma^2. Tuned sigma values depend on this convention.
struct KernelSpec {
  KernelKind kind = KernelKind::rbf;
  double sigma = 1.0;

  void validate() const;
};

std::string to_string(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& name);

double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);
double kernel_eval(const KernelSpec& spec, std::span<const double> a, std::span<const double> b);

/// Dense symmetric matrix, row-major.
class GramMatrix {
 public:
  GramMatrix() = default;
  explicit GramMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

GramMatrix gram_matrix(const KernelSpec& spec, const DataMatrix& rows);

/// Kernel columns for the solvers. Below the memory budget the whole Gram
/// matrix is precomputed; above it columns are computed on demand and kept
/// in a least-recently-used cache.
class KernelColumns {
 public:
  static constexpr std::size_t kDefaultBudgetBytes = std::size_t{256} << 20;

  KernelColumns(const KernelSpec& spec, const DataMatrix& rows,
                std::size_t budget_bytes = kDefaultBudgetBytes);

  std::size_t size() const { return n_; }
  bool precomputed() const { return full_.size() == n_ && n_ > 0; }
  double diagonal(std::size_t i) const { return diag_[i]; }

  /// Column i of the Gram matrix. The span stays valid until at least two
  /// further distinct columns have been requested.
  std::span<const double> column(std::size_t i);

  std::uint64_t kernel_evaluations() const { return evaluations_; }

 private:
  const KernelSpec spec_;
  const DataMatrix& rows_;
  std::size_t n_;
  std::vector<double> diag_;
  GramMatrix full_;
  std::vector<std::vector<double>> slots_;
  std::vector<std::uint64_t> slot_stamp_;
  std::vector<std::int64_t> slot_of_column_;
  std::vector<std::size_t> column_of_slot_;
  std::uint64_t clock_ = 0;
  std::uint64_t evaluations_ = 0;
};

}  // namespace svddfraud
