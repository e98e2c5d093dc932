#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "svddfraud/data_matrix.hpp"

namespace svddfraud::redbscan {

struct ReductionConfig {
  /// Neighborhood radius in normalized feature units; estimated from the
  /// data when absent.
  std::optional<double> eps;
  /// Neighbor rank used by the eps estimate. Not used by the selection loop.
  std::size_t minpts = 4;

  void validate() const;
};

struct ReductionResult {
  DataMatrix selected;
  /// Input row index of every selected representative, in selection order.
  std::vector<std::size_t> selected_indices;
  double eps_used = 0.0;
  /// Neighbor count of every input row, itself included.
  std::vector<std::size_t> weights;
  /// For each input row, the input index of the representative chosen in
  /// the iteration that removed it.
  std::vector<std::size_t> provenance;
};

/// Mean distance from each row to its minpts-th nearest other row.
/// Throws DataError when N <= minpts or when the estimate is 0.
double estimate_eps(const DataMatrix& data, std::size_t minpts);

/// weight(i) = #{ j : ||x_i - x_j|| <= eps }, j = i included.
std::vector<std::size_t> compute_weights(const DataMatrix& data, double eps);

/// Density-weighted representative selection. Repeatedly takes the first
/// remaining row, gathers its eps-neighborhood among the remaining rows,
/// keeps the heaviest member (lowest index on ties) and removes the whole
/// neighborhood, until no rows remain.
ReductionResult reduce(const DataMatrix& data, const ReductionConfig& config);

/// Same loop with caller-supplied eps and weights.
ReductionResult reduce_with_weights(const DataMatrix& data, double eps, std::vector<std::size_t> weights);

/// Writes the selected rows as a table and a `<path>.meta` sidecar with
/// eps_used, minpts, input and output sizes.
void write_reduction(const std::filesystem::path& path, const ReductionResult& result,
                     std::size_t minpts, std::size_t input_rows);

}  // namespace svddfraud::redbscan
