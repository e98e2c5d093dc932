#include "cli.hpp"

#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "svddfraud/dataio.hpp"
#include "svddfraud/errors.hpp"
#include "svddfraud/model_io.hpp"
#include "svddfraud/pipeline.hpp"
#include "svddfraud/redbscan.hpp"

namespace svddfraud::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* cmd, Common& common, bool out_required) {
  cmd->add_option("--config", common.config, "JSON pipeline configuration");
  cmd->add_option("--seed", common.seed, "Master seed (overrides the config)");
  auto* out = cmd->add_option("--out", common.out, "Run directory");
  if (out_required) out->required();
}

pipeline::PipelineConfig load_config(const Common& common) {
  pipeline::PipelineConfig config =
      common.config.empty() ? pipeline::PipelineConfig{} : pipeline::PipelineConfig::from_file(common.config);
  if (common.seed) config.seed = *common.seed;
  return config;
}

void write_failed_marker(const fs::path& dir, const std::string& stage, const std::string& cause) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream marker(dir / "FAILED");
  marker << "stage=" << stage << '\n' << "cause=" << cause << '\n';
}

DataMatrix read_table(const fs::path& path) {
  dataio::TableSchema schema;
  schema.label_column = "label";
  return dataio::load_table(path, schema);
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"One-class fraud detection toolkit: SVDD with density-based sample reduction"};
  app.require_subcommand(1);

  // generate
  Common gen_common;
  std::string gen_shape = "moons";
  std::size_t gen_per_class = 500;
  std::size_t gen_rows = 20000;
  double gen_noise = 0.1;
  double gen_fraud = 0.01;
  std::size_t gen_dims = 2;
  std::string gen_output;
  auto* generate = app.add_subcommand("generate", "Write a synthetic labeled dataset");
  add_common(generate, gen_common, false);
  generate->add_option("--shape", gen_shape, "rings | moons | gaussians | fraud_like")
      ->check(CLI::IsMember({"rings", "moons", "gaussians", "fraud_like"}));
  generate->add_option("--n-per-class", gen_per_class, "Rows per class (two-class shapes)");
  generate->add_option("--rows", gen_rows, "Total rows (fraud_like)");
  generate->add_option("--noise", gen_noise, "Gaussian noise standard deviation");
  generate->add_option("--fraud-fraction", gen_fraud, "Share of anomalies (fraud_like)");
  generate->add_option("--dims", gen_dims, "Feature count (fraud_like)");
  generate->add_option("--output", gen_output, "Output table (default <out>/data.csv)");

  // ingest
  Common ingest_common;
  auto* ingest = app.add_subcommand("ingest", "Load, split and normalize a dataset into a run directory");
  add_common(ingest, ingest_common, true);

  // reduce
  Common reduce_common;
  std::string reduce_input, reduce_output;
  std::optional<double> reduce_eps;
  std::optional<std::size_t> reduce_minpts;
  auto* reduce = app.add_subcommand("reduce", "Select density-weighted representatives of the one-class set");
  add_common(reduce, reduce_common, false);
  reduce->add_option("--input", reduce_input, "Table to reduce (default <out>/svdd_train.csv)");
  reduce->add_option("--output", reduce_output, "Reduced table (default <out>/reduced.csv)");
  reduce->add_option("--eps", reduce_eps, "Neighborhood radius (estimated when omitted)");
  reduce->add_option("--minpts", reduce_minpts, "Neighbor rank for the eps estimate");

  // tune
  Common tune_common;
  std::string tune_model = "all";
  auto* tune = app.add_subcommand("tune", "Genetic-algorithm hyperparameter search");
  add_common(tune, tune_common, true);
  tune->add_option("--model", tune_model, "svdd | svm | all")->check(CLI::IsMember({"svdd", "svm", "all"}));

  // train
  Common train_common;
  std::string train_model = "all";
  std::string train_input, train_model_out;
  std::optional<double> train_sigma, train_fracrej, train_box_c;
  auto* train = app.add_subcommand("train", "Train SVDD and/or SVM models");
  add_common(train, train_common, false);
  train->add_option("--model", train_model, "svdd | svm | all")->check(CLI::IsMember({"svdd", "svm", "all"}));
  train->add_option("--input", train_input, "Train directly on this table instead of a run directory");
  train->add_option("--model-out", train_model_out, "Model file for --input mode");
  train->add_option("--sigma", train_sigma, "RBF width for --input mode");
  train->add_option("--fracrej", train_fracrej, "SVDD rejection fraction for --input mode");
  train->add_option("--box-c", train_box_c, "SVM box constraint for --input mode");

  // evaluate
  Common eval_common;
  std::string eval_model, eval_test, eval_scores;
  auto* evaluate = app.add_subcommand("evaluate", "Score models on the test partition and write reports");
  add_common(evaluate, eval_common, false);
  evaluate->add_option("--model", eval_model, "Single model file to evaluate");
  evaluate->add_option("--test", eval_test, "Labeled test table for --model");
  evaluate->add_option("--scores", eval_scores, "Table with score and label columns (higher = more fraud-like)");

  // compare
  Common compare_common;
  auto* compare = app.add_subcommand("compare", "Run the full SVDD-vs-SVM pipeline");
  add_common(compare, compare_common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  fs::path failure_dir;
  std::string stage = "cli";
  try {
    if (*generate) {
      stage = "generate";
      const auto config = load_config(gen_common);
      const std::uint64_t seed = pipeline::stage_seed(config, "generate");
      DataMatrix data;
      if (gen_shape == "fraud_like") {
        dataio::FraudLikeSpec spec;
        spec.rows = gen_rows;
        spec.fraud_fraction = gen_fraud;
        spec.dims = gen_dims;
        spec.seed = seed;
        data = dataio::generate_fraud_like(spec);
      } else {
        data = dataio::generate_two_class_shapes(gen_per_class, dataio::parse_shape(gen_shape), gen_noise, seed);
      }
      fs::path output = gen_output;
      if (output.empty()) {
        if (gen_common.out.empty()) throw CLI::RequiredError("--output or --out");
        fs::create_directories(gen_common.out);
        output = fs::path(gen_common.out) / "data.csv";
      }
      dataio::write_table(output, data);
      std::cout << output.string() << '\n';
    } else if (*ingest) {
      failure_dir = ingest_common.out;
      pipeline::ingest(load_config(ingest_common), ingest_common.out);
    } else if (*reduce) {
      stage = "reduce";
      failure_dir = reduce_common.out;
      auto config = load_config(reduce_common);
      if (reduce_eps) config.reduction.eps = *reduce_eps;
      if (reduce_minpts) config.reduction.minpts = *reduce_minpts;
      if (!reduce_input.empty()) {
        const DataMatrix data = read_table(reduce_input);
        const auto result = redbscan::reduce(data, config.reduction);
        const fs::path output = reduce_output.empty() ? fs::path(reduce_common.out) / "reduced.csv" : fs::path(reduce_output);
        redbscan::write_reduction(output, result, config.reduction.minpts, data.rows());
        std::cout << data.rows() << " -> " << result.selected.rows() << " rows\n";
      } else {
        if (reduce_common.out.empty()) throw CLI::RequiredError("--out or --input");
        pipeline::reduce(config, reduce_common.out);
      }
    } else if (*tune) {
      failure_dir = tune_common.out;
      const auto config = load_config(tune_common);
      if (tune_model != "svm") pipeline::tune_svdd(config, tune_common.out);
      if (tune_model != "svdd") pipeline::tune_svm(config, tune_common.out);
    } else if (*train) {
      stage = "train";
      failure_dir = train_common.out;
      auto config = load_config(train_common);
      if (!train_input.empty()) {
        if (train_model == "all") throw CLI::ValidationError("--model", "choose svdd or svm with --input");
        if (train_model_out.empty()) throw CLI::RequiredError("--model-out");
        const DataMatrix data = read_table(train_input);
        if (train_model == "svdd") {
          SvddConfig cfg = config.svdd;
          if (train_sigma) cfg.kernel.sigma = *train_sigma;
          if (train_fracrej) cfg.fracrej = *train_fracrej;
          model_io::save(train_model_out, train_svdd(data, cfg));
        } else {
          SvmConfig cfg = config.svm;
          if (train_sigma) cfg.kernel.sigma = *train_sigma;
          if (train_box_c) cfg.box_c = *train_box_c;
          model_io::save(train_model_out, train_svm(data, cfg));
        }
      } else {
        if (train_common.out.empty()) throw CLI::RequiredError("--out or --input");
        if (train_model != "svm") pipeline::train_svdd(config, train_common.out);
        if (train_model != "svdd") pipeline::train_svm(config, train_common.out);
      }
    } else if (*evaluate) {
      stage = "evaluate";
      failure_dir = eval_common.out;
      if (!eval_scores.empty()) {
        dataio::TableSchema schema;
        schema.features = {"score"};
        schema.label_column = "label";
        const DataMatrix table = dataio::load_table(eval_scores, schema);
        std::vector<int> predictions(table.rows());
        for (std::size_t r = 0; r < table.rows(); ++r) predictions[r] = table.values[r] > 0.0 ? 1 : 0;
        const auto metrics = pipeline::score_metrics(table.values, predictions, table.labels);
        if (!eval_common.out.empty()) {
          fs::create_directories(eval_common.out);
          pipeline::write_metrics(fs::path(eval_common.out) / "scores_metrics.txt", "scores", 0, metrics);
          eval::write_roc_csv(fs::path(eval_common.out) / "roc_scores.csv", metrics.roc);
        }
        std::printf("auc=%.17g\n", metrics.roc.auc);
      } else if (!eval_model.empty()) {
        if (eval_test.empty()) throw CLI::RequiredError("--test");
        const DataMatrix test = read_table(eval_test);
        const auto any = model_io::load(eval_model);
        std::vector<double> scores(test.rows());
        std::vector<int> predictions(test.rows());
        for (std::size_t r = 0; r < test.rows(); ++r) {
          if (const auto* svdd = std::get_if<SvddModel>(&any)) {
            scores[r] = -decision_score(*svdd, test.row(r));
            predictions[r] = scores[r] > 0.0 ? 1 : 0;
          } else {
            scores[r] = svm_decision(std::get<SvmModel>(any), test.row(r));
            predictions[r] = scores[r] > 0.0 ? 1 : 0;
          }
        }
        const auto metrics = pipeline::score_metrics(scores, predictions, test.labels);
        if (!eval_common.out.empty()) {
          fs::create_directories(eval_common.out);
          pipeline::write_metrics(fs::path(eval_common.out) / "model_metrics.txt", "model", 0, metrics);
          eval::write_roc_csv(fs::path(eval_common.out) / "roc_model.csv", metrics.roc);
        }
        std::printf("auc=%.17g\n", metrics.roc.auc);
      } else {
        if (eval_common.out.empty()) throw CLI::RequiredError("--out, --model or --scores");
        pipeline::evaluate(load_config(eval_common), eval_common.out);
      }
    } else if (*compare) {
      const auto config = load_config(compare_common);
      const fs::path dir = pipeline::run_directory(config, compare_common.out);
      failure_dir = dir;
      pipeline::run_pipeline(config, dir);
      std::cout << dir.string() << '\n';
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const pipeline::StageError& e) {
    spdlog::error("{}", e.what());
    write_failed_marker(failure_dir, e.stage(), e.what());
    return kExitStageFailure;
  } catch (const std::exception& e) {
    spdlog::error("{}: {}", stage, e.what());
    write_failed_marker(failure_dir, stage, e.what());
    return kExitStageFailure;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"svddfraud"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace svddfraud::cli
