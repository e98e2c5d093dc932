#include "svddfraud/svdd.hpp"

#include <algorithm>
#include <cmath>

#include "svddfraud/errors.hpp"
#include "svddfraud/smo.hpp"

namespace svddfraud {

void SvddConfig::validate() const {
  kernel.validate();
  if (!box_c && !(fracrej > 0.0 && fracrej < 1.0)) throw ConfigError("fracrej must lie in (0, 1)");
  if (box_c && !(*box_c > 0.0)) throw ConfigError("box constraint must be positive");
  if (!(solver_tolerance > 0.0)) throw ConfigError("solver tolerance must be positive");
}

SvddModel train_svdd(const DataMatrix& data, const SvddConfig& config) {
  config.validate();
  const std::size_t n = data.rows();
  if (n == 0) throw DataError("train_svdd: no training rows");
  const double c = config.box_c ? *config.box_c : 1.0 / (static_cast<double>(n) * config.fracrej);
  if (c * static_cast<double>(n) < 1.0 - 1e-12) {
    throw ConfigError("train_svdd: infeasible box constraint (C * N < 1)");
  }

  KernelColumns kernel(config.kernel, data, config.cache_bytes);
  BoxQp qp{kernel, 2.0, std::vector<double>(n), std::vector<int>(n, 1), std::vector<double>(n, c)};
  for (std::size_t i = 0; i < n; ++i) qp.linear[i] = -kernel.diagonal(i);

  // Feasible start: fill coefficients to C in row order until they sum to 1.
  std::vector<double> alpha(n, 0.0);
  double remaining = 1.0;
  for (std::size_t i = 0; i < n && remaining > 0.0; ++i) {
    alpha[i] = std::min(c, remaining);
    remaining -= alpha[i];
  }

  SmoResult solution = solve_smo(qp, std::move(alpha), config.solver_tolerance, config.max_iterations);

  SvddModel model;
  model.kernel = config.kernel;
  model.dim = data.cols();
  model.box_c = c;
  model.training_rows = n;
  model.iterations = solution.iterations;
  const double threshold_zero = 1e-8 * c;
  for (std::size_t i = 0; i < n; ++i) {
    if (solution.alpha[i] > threshold_zero) {
      model.support_indices.push_back(i);
      model.alphas.push_back(solution.alpha[i]);
      auto r = data.row(i);
      model.support_rows.insert(model.support_rows.end(), r.begin(), r.end());
    }
  }

  double offset = 0.0;
  for (std::size_t a = 0; a < model.support_count(); ++a) {
    for (std::size_t b = 0; b < model.support_count(); ++b) {
      offset += model.alphas[a] * model.alphas[b] *
                kernel_eval(model.kernel, model.support_row(a), model.support_row(b));
    }
  }
  model.offset_term = offset;

  double sum_free = 0.0;
  std::size_t num_free = 0;
  double max_dist = 0.0;
  for (std::size_t a = 0; a < model.support_count(); ++a) {
    const double d = kernel_distance_sq(model, model.support_row(a));
    max_dist = std::max(max_dist, d);
    if (model.alphas[a] < c - threshold_zero) {
      sum_free += d;
      ++num_free;
    }
  }
  model.radius_sq = std::max(0.0, num_free > 0 ? sum_free / static_cast<double>(num_free) : max_dist);
  return model;
}

double kernel_distance_sq(const SvddModel& model, std::span<const double> z) {
  if (z.size() != model.dim) throw std::invalid_argument("kernel_distance_sq: arity mismatch");
  double cross = 0.0;
  for (std::size_t a = 0; a < model.support_count(); ++a) {
    cross += model.alphas[a] * kernel_eval(model.kernel, model.support_row(a), z);
  }
  return std::max(0.0, kernel_eval(model.kernel, z, z) - 2.0 * cross + model.offset_term);
}

double decision_score(const SvddModel& model, std::span<const double> z) {
  return model.radius_sq - kernel_distance_sq(model, z);
}

std::vector<int> classify(const SvddModel& model, const DataMatrix& data) {
  if (data.cols() != model.dim) throw std::invalid_argument("classify: arity mismatch");
  std::vector<int> out(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) out[r] = decision_score(model, data.row(r)) < 0.0 ? 1 : 0;
  return out;
}

double dual_objective(const SvddModel& model) {
  double linear = 0.0;
  for (std::size_t a = 0; a < model.support_count(); ++a) {
    linear += model.alphas[a] * kernel_eval(model.kernel, model.support_row(a), model.support_row(a));
  }
  return linear - model.offset_term;
}

}  // namespace svddfraud
