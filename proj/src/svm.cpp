#include "svddfraud/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "svddfraud/errors.hpp"
#include "svddfraud/eval.hpp"
#include "svddfraud/seeding.hpp"
#include "svddfraud/smo.hpp"

namespace svddfraud {

void SvmConfig::validate() const {
  kernel.validate();
  if (!(box_c > 0.0)) throw ConfigError("box_c must be positive");
  if (!(positive_weight > 0.0)) throw ConfigError("positive_weight must be positive");
  if (!(solver_tolerance > 0.0)) throw ConfigError("solver tolerance must be positive");
}

SvmModel train_svm(const DataMatrix& data, const SvmConfig& config) {
  config.validate();
  if (!data.labeled()) throw DataError("train_svm: labels required");
  const std::size_t n = data.rows();
  if (data.count_label(0) == 0 || data.count_label(1) == 0) {
    throw DataError("train_svm: training data must contain both classes");
  }

  KernelColumns kernel(config.kernel, data, config.cache_bytes);
  BoxQp qp{kernel, 1.0, std::vector<double>(n, -1.0), std::vector<int>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    qp.sign[i] = data.labels[i] == 1 ? 1 : -1;
    qp.upper[i] = data.labels[i] == 1 ? config.box_c * config.positive_weight : config.box_c;
  }
  SmoResult sol = solve_smo(qp, std::vector<double>(n, 0.0), config.solver_tolerance, config.max_iterations);

  // Bias from the unbounded support vectors; midpoint of the feasible
  // interval when there are none.
  double upper_bound = std::numeric_limits<double>::infinity();
  double lower_bound = -upper_bound;
  double sum_free = 0.0;
  std::size_t num_free = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double yg = qp.sign[i] * sol.gradient[i];
    const bool at_upper = sol.alpha[i] >= qp.upper[i];
    const bool at_lower = sol.alpha[i] <= 0.0;
    if (at_upper) {
      if (qp.sign[i] == -1) upper_bound = std::min(upper_bound, yg);
      else lower_bound = std::max(lower_bound, yg);
    } else if (at_lower) {
      if (qp.sign[i] == 1) upper_bound = std::min(upper_bound, yg);
      else lower_bound = std::max(lower_bound, yg);
    } else {
      sum_free += yg;
      ++num_free;
    }
  }
  const double rho = num_free > 0 ? sum_free / static_cast<double>(num_free) : (upper_bound + lower_bound) / 2.0;

  SvmModel model;
  model.kernel = config.kernel;
  model.dim = data.cols();
  model.bias = -rho;
  model.box_c = config.box_c;
  model.training_rows = n;
  model.iterations = sol.iterations;
  for (std::size_t i = 0; i < n; ++i) {
    if (sol.alpha[i] > 0.0) {
      model.support_indices.push_back(i);
      model.signed_alphas.push_back(sol.alpha[i] * qp.sign[i]);
      auto r = data.row(i);
      model.support_rows.insert(model.support_rows.end(), r.begin(), r.end());
    }
  }
  return model;
}

double svm_decision(const SvmModel& model, std::span<const double> z) {
  if (z.size() != model.dim) throw std::invalid_argument("svm_decision: arity mismatch");
  double sum = model.bias;
  for (std::size_t a = 0; a < model.support_count(); ++a) {
    sum += model.signed_alphas[a] * kernel_eval(model.kernel, model.support_row(a), z);
  }
  return sum;
}

std::vector<int> svm_predict(const SvmModel& model, const DataMatrix& data) {
  if (data.cols() != model.dim) throw std::invalid_argument("svm_predict: arity mismatch");
  std::vector<int> out(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) out[r] = svm_decision(model, data.row(r)) > 0.0 ? 1 : 0;
  return out;
}

double dual_objective(const SvmModel& model) {
  double linear = 0.0;
  double quad = 0.0;
  for (std::size_t a = 0; a < model.support_count(); ++a) {
    linear += std::abs(model.signed_alphas[a]);
    for (std::size_t b = 0; b < model.support_count(); ++b) {
      quad += model.signed_alphas[a] * model.signed_alphas[b] *
              kernel_eval(model.kernel, model.support_row(a), model.support_row(b));
    }
  }
  return linear - 0.5 * quad;
}

std::vector<std::vector<std::size_t>> make_folds(std::span<const int> labels, std::size_t k,
                                                 std::uint64_t seed, bool stratified) {
  const std::size_t n = labels.size();
  if (k < 2 || k > n) throw ConfigError("k must lie in [2, N]");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<std::size_t>> folds(k);
  if (stratified) {
    for (int label : {0, 1}) {
      const auto members = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
      if (members > 0 && members < k) {
        throw ConfigError("stratified k-fold needs at least k rows of every class present");
      }
    }
    // Class-major order dealt round robin keeps both the per-class shares
    // and the overall sizes balanced.
    std::stable_partition(order.begin(), order.end(), [&](std::size_t i) { return labels[i] == 1; });
    for (std::size_t p = 0; p < n; ++p) folds[p % k].push_back(order[p]);
  } else {
    std::size_t start = 0;
    for (std::size_t f = 0; f < k; ++f) {
      const std::size_t size = n / k + (f < n % k ? 1 : 0);
      folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                      order.begin() + static_cast<std::ptrdiff_t>(start + size));
      start += size;
    }
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

CrossValidationResult kfold_cross_validate(const DataMatrix& data, const SvmConfig& config, std::size_t k,
                                           std::uint64_t seed, bool stratified) {
  if (!data.labeled()) throw DataError("kfold_cross_validate: labels required");
  CrossValidationResult result;
  result.folds = make_folds(data.labels, k, seed, stratified);

  std::vector<double> pooled_scores;
  std::vector<int> pooled_truth;
  double auc_sum = 0.0;
  double f_sum = 0.0;
  std::size_t auc_count = 0;
  std::vector<bool> held(data.rows());
  for (const auto& fold : result.folds) {
    std::fill(held.begin(), held.end(), false);
    for (std::size_t idx : fold) held[idx] = true;
    std::vector<std::size_t> train_idx;
    for (std::size_t i = 0; i < data.rows(); ++i) {
      if (!held[i]) train_idx.push_back(i);
    }
    const DataMatrix train = data.select(train_idx);
    const DataMatrix holdout = data.select(fold);
    const SvmModel model = train_svm(train, config);

    std::vector<double> scores(holdout.rows());
    for (std::size_t r = 0; r < holdout.rows(); ++r) scores[r] = svm_decision(model, holdout.row(r));
    FoldMetrics m;
    m.holdout_rows = holdout.rows();
    const auto prf = eval::precision_recall_f(eval::confusion(svm_predict(model, holdout), holdout.labels), false);
    m.precision = prf.precision;
    m.recall = prf.recall;
    m.f_measure = prf.f_measure;
    const bool both = holdout.count_label(0) > 0 && holdout.count_label(1) > 0;
    m.auc = both ? eval::roc_and_auc(scores, holdout.labels).auc : std::numeric_limits<double>::quiet_NaN();
    if (both) {
      auc_sum += m.auc;
      ++auc_count;
    }
    f_sum += m.f_measure;
    result.per_fold.push_back(m);
    pooled_scores.insert(pooled_scores.end(), scores.begin(), scores.end());
    pooled_truth.insert(pooled_truth.end(), holdout.labels.begin(), holdout.labels.end());
  }
  result.mean_auc = auc_count > 0 ? auc_sum / static_cast<double>(auc_count)
                                  : std::numeric_limits<double>::quiet_NaN();
  result.mean_f_measure = f_sum / static_cast<double>(result.folds.size());
  result.pooled_auc = eval::roc_and_auc(pooled_scores, pooled_truth).auc;
  return result;
}

}  // namespace svddfraud
