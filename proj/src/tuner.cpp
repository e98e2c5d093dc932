#include "svddfraud/tuner.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

#include "svddfraud/errors.hpp"
#include "svddfraud/eval.hpp"
#include "svddfraud/seeding.hpp"

namespace svddfraud::tuner {

void GaConfig::validate() const {
  if (population_size < 2) throw ConfigError("population_size must be at least 2");
  if (elitism_count >= population_size) throw ConfigError("elitism_count must be below population_size");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw ConfigError("crossover_rate must lie in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw ConfigError("mutation_rate must lie in [0, 1]");
  if (!(mutation_scale > 0.0)) throw ConfigError("mutation_scale must be positive");
  if (bounds.empty()) throw ConfigError("at least one gene bound required");
  for (const auto& b : bounds) {
    if (!(b.lo < b.hi)) throw ConfigError("gene bounds need min < max");
  }
}

double evaluate_fitness(std::span<const double> genes, const FitnessFn& objective) {
  try {
    const double f = objective(genes);
    if (std::isnan(f)) {
      spdlog::warn("fitness evaluation returned NaN; using sentinel {}", kFailedFitness);
      return kFailedFitness;
    }
    return f;
  } catch (const std::exception& e) {
    spdlog::warn("fitness evaluation failed ({}); using sentinel {}", e.what(), kFailedFitness);
    return kFailedFitness;
  }
}

namespace {

std::size_t tournament(const std::vector<Chromosome>& pop, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  const std::size_t a = pick(rng);
  const std::size_t b = pick(rng);
  return pop[a].fitness >= pop[b].fitness ? a : b;
}

GenerationStats summarize(std::size_t generation, const std::vector<Chromosome>& pop, const Chromosome& best) {
  GenerationStats s;
  s.generation = generation;
  s.best_fitness = best.fitness;
  s.best_genes = best.genes;
  double sum = 0.0;
  for (const auto& c : pop) sum += c.fitness;
  s.mean_fitness = sum / static_cast<double>(pop.size());
  return s;
}

}  // namespace

GaResult run_ga(const GaConfig& config, const FitnessFn& objective) {
  config.validate();
  const auto& bounds = config.bounds;
  const std::size_t genes = bounds.size();

  std::vector<Chromosome> pop(config.population_size);
  for (std::size_t k = 0; k < pop.size(); ++k) {
    Rng rng(derive_seed(config.seed, 0, k));
    pop[k].genes.resize(genes);
    for (std::size_t g = 0; g < genes; ++g) {
      pop[k].genes[g] = std::uniform_real_distribution<double>(bounds[g].lo, bounds[g].hi)(rng);
    }
  }
  for (auto& c : pop) c.fitness = evaluate_fitness(c.genes, objective);

  auto by_fitness = [](const Chromosome& a, const Chromosome& b) { return a.fitness > b.fitness; };
  GaResult result;
  std::stable_sort(pop.begin(), pop.end(), by_fitness);
  result.best = pop.front();
  result.history.push_back(summarize(0, pop, result.best));

  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    std::vector<Chromosome> next(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(config.elitism_count));
    next.resize(config.population_size);
    for (std::size_t k = config.elitism_count; k < next.size(); ++k) {
      Rng rng(derive_seed(config.seed, gen, k));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::normal_distribution<double> gauss(0.0, 1.0);
      const auto& p1 = pop[tournament(pop, rng)];
      const auto& p2 = pop[tournament(pop, rng)];
      auto& child = next[k];
      child.genes = p1.genes;
      if (unit(rng) < config.crossover_rate) {
        for (std::size_t g = 0; g < genes; ++g) {
          const double lo = std::min(p1.genes[g], p2.genes[g]);
          const double hi = std::max(p1.genes[g], p2.genes[g]);
          const double spread = 0.5 * (hi - lo);
          child.genes[g] = lo - spread + unit(rng) * (hi - lo + 2.0 * spread);
        }
      }
      for (std::size_t g = 0; g < genes; ++g) {
        if (unit(rng) < config.mutation_rate) {
          child.genes[g] += gauss(rng) * config.mutation_scale * (bounds[g].hi - bounds[g].lo);
        }
        child.genes[g] = std::clamp(child.genes[g], bounds[g].lo, bounds[g].hi);
      }
    }
    for (std::size_t k = config.elitism_count; k < next.size(); ++k) {
      next[k].fitness = evaluate_fitness(next[k].genes, objective);
    }
    pop = std::move(next);
    std::stable_sort(pop.begin(), pop.end(), by_fitness);
    if (pop.front().fitness > result.best.fitness) result.best = pop.front();
    result.history.push_back(summarize(gen, pop, result.best));
  }
  return result;
}

void write_history(const std::filesystem::path& path, const GaResult& result) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "generation,best_fitness,mean_fitness";
  const std::size_t genes = result.best.genes.size();
  for (std::size_t g = 0; g < genes; ++g) out << ",gene" << g;
  out << '\n';
  char buf[40];
  for (const auto& h : result.history) {
    out << h.generation;
    for (double v : {h.best_fitness, h.mean_fitness}) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out << buf;
    }
    for (double v : h.best_genes) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out << buf;
    }
    out << '\n';
  }
}

SvddConfig svdd_config_from_genes(std::span<const double> genes, const SvddConfig& base) {
  if (genes.size() != 2) throw ConfigError("SVDD chromosome has 2 genes");
  SvddConfig cfg = base;
  cfg.kernel.kind = KernelKind::rbf;
  cfg.kernel.sigma = std::pow(10.0, genes[0]);
  cfg.fracrej = genes[1];
  cfg.box_c.reset();
  return cfg;
}

SvmConfig svm_config_from_genes(std::span<const double> genes, const SvmConfig& base) {
  if (genes.size() != 2) throw ConfigError("SVM chromosome has 2 genes");
  SvmConfig cfg = base;
  cfg.kernel.kind = KernelKind::rbf;
  cfg.kernel.sigma = std::pow(10.0, genes[0]);
  cfg.box_c = std::pow(10.0, genes[1]);
  return cfg;
}

FitnessFn svdd_validation_objective(const DataMatrix& train, const DataMatrix& validation,
                                    const SvddConfig& base) {
  return [&train, &validation, base](std::span<const double> genes) {
    const SvddModel model = train_svdd(train, svdd_config_from_genes(genes, base));
    std::vector<double> scores(validation.rows());
    for (std::size_t r = 0; r < validation.rows(); ++r) scores[r] = -decision_score(model, validation.row(r));
    return eval::roc_and_auc(scores, validation.labels).auc;
  };
}

FitnessFn svm_cv_objective(const DataMatrix& data, const SvmConfig& base, std::size_t k, std::uint64_t seed,
                           bool stratified) {
  return [&data, base, k, seed, stratified](std::span<const double> genes) {
    return kfold_cross_validate(data, svm_config_from_genes(genes, base), k, seed, stratified).mean_auc;
  };
}

}  // namespace svddfraud::tuner
