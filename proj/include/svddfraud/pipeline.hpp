#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <optional>
#include <stdexcept>
#include <string>

#include "svddfraud/dataio.hpp"
#include "svddfraud/eval.hpp"
#include "svddfraud/redbscan.hpp"
#include "svddfraud/svdd.hpp"
#include "svddfraud/svm.hpp"
#include "svddfraud/tuner.hpp"

namespace svddfraud::pipeline {

/// Raised by every stage; carries the stage name for reporting.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& cause)
      : std::runtime_error(stage + ": " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct SyntheticSource {
  /// "fraud_like", "gaussians", "moons" or "rings".
  std::string kind = "fraud_like";
  std::size_t rows = 20000;
  double fraud_fraction = 0.01;
  std::size_t dims = 2;
  double core_sd = 0.7;
  double box_size = 10.0;
  std::size_t clusters = 1;
  double tail_dof = 0.0;
  std::size_t n_per_class = 500;
  double noise = 0.3;
};

struct PipelineConfig {
  std::uint64_t seed = 0;

  /// Input table; ignored when `synthetic` is set.
  std::filesystem::path input;
  dataio::TableSchema schema;
  std::optional<SyntheticSource> synthetic;

  dataio::SplitSpec split;
  bool reduce = true;
  redbscan::ReductionConfig reduction;

  bool tune_svdd = true;
  SvddConfig svdd;
  bool tune_svm = true;
  SvmConfig svm;

  tuner::GaConfig ga;
  tuner::SvddSearchSpace svdd_space;
  tuner::SvmSearchSpace svm_space;
  std::size_t folds = 3;
  bool stratified_folds = true;
  /// Rows of the two-class training partition used for SVM tuning.
  std::size_t svm_tune_max_rows = 2000;
  /// 0 keeps every two-class training row for the final SVM.
  std::size_t svm_max_train_rows = 0;
  bool equal_budget = true;

  /// Reads the JSON configuration format documented in the README.
  static PipelineConfig from_json_text(const std::string& text);
  static PipelineConfig from_file(const std::filesystem::path& path);
  /// Canonical JSON (sorted keys) of every effective setting.
  std::string to_json_text() const;
  /// Hex FNV-1a of the canonical JSON; names the run directory.
  std::string hash() const;
};

/// Seed for a stage: derive_seed(master, stage).
std::uint64_t stage_seed(const PipelineConfig& config, const std::string& stage);

// Stages read and write fixed file names inside one run directory:
//   ingest    -> svdd_train.csv svm_train.csv validation.csv test.csv normalization.txt
//   reduce    -> reduced.csv reduced.csv.meta
//   tune      -> svdd_params.txt tuning_svdd.csv / svm_params.txt tuning_svm.csv
//   train     -> svdd.model svm.model (+ svdd_unreduced.model svm_equal.model)
//   evaluate  -> *_metrics.txt roc_*.csv roc.svg report.md comparison.txt
// Timings are appended to timing.txt.

void ingest(const PipelineConfig& config, const std::filesystem::path& dir);
void reduce(const PipelineConfig& config, const std::filesystem::path& dir);
void tune_svdd(const PipelineConfig& config, const std::filesystem::path& dir);
void tune_svm(const PipelineConfig& config, const std::filesystem::path& dir);
void train_svdd(const PipelineConfig& config, const std::filesystem::path& dir);
void train_svm(const PipelineConfig& config, const std::filesystem::path& dir);
void evaluate(const PipelineConfig& config, const std::filesystem::path& dir);

/// All stages in order into `dir`. With `config.equal_budget` the run also
/// trains an SVDD on the unreduced one-class set and an SVM on a stratified
/// sample the size of the reduced set. On failure a FAILED marker naming the
/// stage is written and StageError is rethrown.
void run_pipeline(const PipelineConfig& config, const std::filesystem::path& dir);

/// run_pipeline with `equal_budget` forced on.
void run_equal_budget_comparison(const PipelineConfig& config, const std::filesystem::path& dir);

/// `base / ("run-" + config.hash())`.
std::filesystem::path run_directory(const PipelineConfig& config, const std::filesystem::path& base);

struct ScoredMetrics {
  eval::ConfusionCounts counts;
  eval::PrfScores prf;
  eval::RocCurve roc;
};

/// Scores are "higher = more fraud-like"; predictions are 0/1.
ScoredMetrics score_metrics(std::span<const double> scores, std::span<const int> predictions,
                            std::span<const int> truths);

/// Key-value metric report (`key=value` lines after a versioned header).
void write_metrics(const std::filesystem::path& path, const std::string& model, std::size_t train_rows,
                   const ScoredMetrics& metrics);

/// Reads a `key=value` text file (params, metrics, meta) into a map.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

}  // namespace svddfraud::pipeline
