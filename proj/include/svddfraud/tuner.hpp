#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "svddfraud/data_matrix.hpp"
#include "svddfraud/svdd.hpp"
#include "svddfraud/svm.hpp"

namespace svddfraud::tuner {

struct GeneBounds {
  double lo = 0.0;
  double hi = 1.0;
};

struct GaConfig {
  std::size_t population_size = 16;
  std::size_t generations = 10;
  double crossover_rate = 0.9;
  double mutation_rate = 0.2;
  /// Mutation standard deviation as a fraction of each gene's range.
  double mutation_scale = 0.1;
  std::size_t elitism_count = 1;
  std::uint64_t seed = 0;
  std::vector<GeneBounds> bounds;

  void validate() const;
};

struct Chromosome {
  std::vector<double> genes;
  double fitness = 0.0;
};

/// Higher is better.
using FitnessFn = std::function<double(std::span<const double>)>;

/// Returned for chromosomes whose objective throws; below every AUC.
inline constexpr double kFailedFitness = -1.0;

double evaluate_fitness(std::span<const double> genes, const FitnessFn& objective);

struct GenerationStats {
  std::size_t generation = 0;
  /// Best fitness seen so far (monotone with elitism).
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  std::vector<double> best_genes;
};

struct GaResult {
  Chromosome best;
  std::vector<GenerationStats> history;
};

/// Generational GA: uniform initialization, size-2 tournaments, blend
/// crossover (alpha 0.5), per-gene Gaussian mutation, clipping to bounds and
/// elitism. Each individual draws from its own stream seeded by
/// (seed, generation, index), so results do not depend on evaluation order.
GaResult run_ga(const GaConfig& config, const FitnessFn& objective);

void write_history(const std::filesystem::path& path, const GaResult& result);

/// Gene layout (log10 sigma, fracrej).
struct SvddSearchSpace {
  GeneBounds log_sigma{-2.0, 2.0};
  GeneBounds fracrej{0.005, 0.2};
  std::vector<GeneBounds> bounds() const { return {log_sigma, fracrej}; }
};

/// Gene layout (log10 sigma, log10 box_c).
struct SvmSearchSpace {
  GeneBounds log_sigma{-2.0, 2.0};
  GeneBounds log_box_c{-2.0, 2.0};
  std::vector<GeneBounds> bounds() const { return {log_sigma, log_box_c}; }
};

SvddConfig svdd_config_from_genes(std::span<const double> genes, const SvddConfig& base);
SvmConfig svm_config_from_genes(std::span<const double> genes, const SvmConfig& base);

/// AUC on a labeled validation set of an SVDD trained on `train`, scored by
/// -decision_score.
FitnessFn svdd_validation_objective(const DataMatrix& train, const DataMatrix& validation,
                                    const SvddConfig& base);

/// Mean k-fold AUC of the SVM.
FitnessFn svm_cv_objective(const DataMatrix& data, const SvmConfig& base, std::size_t k,
                           std::uint64_t seed, bool stratified = true);

}  // namespace svddfraud::tuner
