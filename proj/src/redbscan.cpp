#include "svddfraud/redbscan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>

#include "svddfraud/dataio.hpp"
#include "svddfraud/errors.hpp"
#include "svddfraud/kernel.hpp"

namespace svddfraud::redbscan {

void ReductionConfig::validate() const {
  if (eps && !(*eps > 0.0)) throw ConfigError("eps must be positive");
  if (minpts < 1) throw ConfigError("minpts must be at least 1");
}

double estimate_eps(const DataMatrix& data, std::size_t minpts) {
  const std::size_t n = data.rows();
  if (minpts < 1) throw ConfigError("minpts must be at least 1");
  if (n <= minpts) throw DataError("estimate_eps: need more rows than minpts");
  double total = 0.0;
  std::priority_queue<double> nearest;  // max-heap of the minpts smallest
  for (std::size_t i = 0; i < n; ++i) {
    nearest = {};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = squared_distance(data.row(i), data.row(j));
      if (nearest.size() < minpts) {
        nearest.push(d);
      } else if (d < nearest.top()) {
        nearest.pop();
        nearest.push(d);
      }
    }
    total += std::sqrt(nearest.top());
  }
  const double eps = total / static_cast<double>(n);
  if (!(eps > 0.0)) throw DataError("estimate_eps: degenerate data (all neighbor distances are 0)");
  return eps;
}

std::vector<std::size_t> compute_weights(const DataMatrix& data, double eps) {
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  const std::size_t n = data.rows();
  const double eps_sq = eps * eps;
  std::vector<std::size_t> weights(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (squared_distance(data.row(i), data.row(j)) <= eps_sq) {
        ++weights[i];
        ++weights[j];
      }
    }
  }
  return weights;
}

ReductionResult reduce_with_weights(const DataMatrix& data, double eps, std::vector<std::size_t> weights) {
  const std::size_t n = data.rows();
  if (n == 0) throw DataError("reduce: no rows");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (weights.size() != n) throw std::invalid_argument("reduce: one weight per row required");

  const double eps_sq = eps * eps;
  ReductionResult result;
  result.eps_used = eps;
  result.weights = std::move(weights);
  result.provenance.assign(n, n);

  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::size_t> neighborhood;
  std::vector<std::size_t> survivors;
  while (!pool.empty()) {
    const auto anchor = data.row(pool.front());
    neighborhood.clear();
    survivors.clear();
    for (std::size_t idx : pool) {
      (squared_distance(anchor, data.row(idx)) <= eps_sq ? neighborhood : survivors).push_back(idx);
    }
    // The pool stays in ascending index order, so the first maximum is
    // also the lowest index among ties.
    std::size_t best = neighborhood.front();
    for (std::size_t idx : neighborhood) {
      if (result.weights[idx] > result.weights[best]) best = idx;
    }
    result.selected_indices.push_back(best);
    for (std::size_t idx : neighborhood) result.provenance[idx] = best;
    pool.swap(survivors);
  }
  result.selected = data.select(result.selected_indices);
  return result;
}

ReductionResult reduce(const DataMatrix& data, const ReductionConfig& config) {
  config.validate();
  if (data.rows() == 0) throw DataError("reduce: no rows");
  const double eps = config.eps ? *config.eps : estimate_eps(data, config.minpts);
  return reduce_with_weights(data, eps, compute_weights(data, eps));
}

void write_reduction(const std::filesystem::path& path, const ReductionResult& result, std::size_t minpts,
                     std::size_t input_rows) {
  dataio::write_table(path, result.selected);
  std::ofstream meta(path.string() + ".meta");
  if (!meta) throw DataError("cannot write " + path.string() + ".meta");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", result.eps_used);
  meta << "# svddfraud reduction v1\n"
       << "eps_used=" << buf << '\n'
       << "minpts=" << minpts << '\n'
       << "input_rows=" << input_rows << '\n'
       << "output_rows=" << result.selected.rows() << '\n';
}

}  // namespace svddfraud::redbscan
