#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cli.hpp"
#include "svddfraud/dataio.hpp"
#include "svddfraud/errors.hpp"
#include "svddfraud/pipeline.hpp"
#include "svddfraud/seeding.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace svddfraud;
using namespace svddfraud::pipeline;

namespace {

constexpr const char* kSmallConfig = R"({
  "seed": 11,
  "data": {"synthetic": {"kind": "fraud_like", "rows": 1500, "fraud_fraction": 0.05}},
  "split": {"test_fraction": 0.3, "train_target_fraction": 0.3, "validation_fraction": 0.2},
  "reduction": {"enabled": true, "minpts": 4},
  "svdd": "tune",
  "svm": {"tune": true, "tune_max_rows": 400},
  "ga": {"population_size": 6, "generations": 3},
  "folds": 3,
  "equal_budget": true
})";

const std::vector<std::string> kReportFiles = {
    "svdd_metrics.txt", "svdd_unreduced_metrics.txt", "svm_metrics.txt", "svm_equal_metrics.txt",
    "roc_svdd.csv",     "roc_svdd_unreduced.csv",     "roc_svm.csv",     "roc_svm_equal.csv",
    "comparison.txt",   "report.md",                  "roc.svg"};

void expect_same_reports(const fs::path& a, const fs::path& b) {
  for (const auto& f : kReportFiles) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    ASSERT_TRUE(fs::exists(b / f)) << f;
    EXPECT_EQ(testutil::slurp(a / f), testutil::slurp(b / f)) << f;
  }
}

}  // namespace

TEST(Config, ParsesAndHashesCanonically) {
  const auto c = PipelineConfig::from_json_text(kSmallConfig);
  EXPECT_EQ(c.seed, 11u);
  ASSERT_TRUE(c.synthetic);
  EXPECT_EQ(c.synthetic->rows, 1500u);
  EXPECT_TRUE(c.tune_svdd);
  EXPECT_TRUE(c.tune_svm);
  EXPECT_EQ(c.svm_tune_max_rows, 400u);
  EXPECT_EQ(c.ga.population_size, 6u);
  const auto again = PipelineConfig::from_json_text(c.to_json_text());
  EXPECT_EQ(again.hash(), c.hash());
  EXPECT_EQ(again.to_json_text(), c.to_json_text());
  auto other = c;
  other.seed = 12;
  EXPECT_NE(other.hash(), c.hash());
  EXPECT_EQ(run_directory(c, "base"), fs::path("base") / ("run-" + c.hash()));
  EXPECT_THROW(PipelineConfig::from_json_text("{not json"), ConfigError);
  EXPECT_THROW(PipelineConfig::from_json_text(R"({"svdd": "maybe"})"), ConfigError);
}

TEST(Config, StageSeedsAreIndependent) {
  PipelineConfig c;
  c.seed = 5;
  EXPECT_NE(stage_seed(c, "ingest"), stage_seed(c, "tune_svm"));
  EXPECT_EQ(stage_seed(c, "ingest"), derive_seed(5, "ingest"));
}

TEST(Pipeline, ProducesArtifactsAndIsDeterministic) {
  testutil::TempDir dir;
  const auto config = PipelineConfig::from_json_text(kSmallConfig);
  run_pipeline(config, dir.path() / "a");
  run_pipeline(config, dir.path() / "b");
  expect_same_reports(dir.path() / "a", dir.path() / "b");
  for (const char* f : {"svdd.model", "svm.model", "timing.txt", "config.json", "normalization.txt"})
    EXPECT_TRUE(fs::exists(dir.path() / "a" / f)) << f;
  EXPECT_FALSE(fs::exists(dir.path() / "a" / "FAILED"));
}

TEST(Pipeline, EqualBudgetSizesAndReportSchema) {
  testutil::TempDir dir;
  auto config = PipelineConfig::from_json_text(kSmallConfig);
  config.equal_budget = false;
  run_equal_budget_comparison(config, dir.path());
  const auto meta = read_key_values(dir.path() / "reduced.csv.meta");
  const auto equal = read_key_values(dir.path() / "svm_equal_metrics.txt");
  EXPECT_EQ(equal.at("train_rows"), meta.at("output_rows"));
  const auto svdd = read_key_values(dir.path() / "svdd_metrics.txt");
  EXPECT_EQ(svdd.at("train_rows"), meta.at("output_rows"));
  const auto cmp = read_key_values(dir.path() / "comparison.txt");
  for (const char* key : {"auc_svdd", "auc_svm", "auc_svm_equal"}) EXPECT_TRUE(cmp.count(key)) << key;
}

TEST(Pipeline, StagesComposeThroughTheCli) {
  testutil::TempDir dir;
  const auto cfg_path = dir.write("config.json", kSmallConfig);
  const auto config = PipelineConfig::from_file(cfg_path);
  run_pipeline(config, dir.path() / "whole");

  const std::string out = (dir.path() / "staged").string();
  const std::string c = cfg_path.string();
  ASSERT_EQ(cli::run({"ingest", "--config", c, "--out", out}), cli::kExitOk);
  ASSERT_EQ(cli::run({"reduce", "--config", c, "--out", out}), cli::kExitOk);
  ASSERT_EQ(cli::run({"tune", "--config", c, "--out", out}), cli::kExitOk);
  ASSERT_EQ(cli::run({"train", "--config", c, "--out", out}), cli::kExitOk);
  ASSERT_EQ(cli::run({"evaluate", "--config", c, "--out", out}), cli::kExitOk);
  expect_same_reports(dir.path() / "whole", dir.path() / "staged");
}

TEST(Pipeline, TestPartitionIsReadOnlyByEvaluate) {
  testutil::TempDir dir;
  const auto config = PipelineConfig::from_json_text(kSmallConfig);
  std::map<std::string, std::set<std::string>> reads;
  std::string current;
  dataio::set_read_observer([&](const fs::path& p) { reads[current].insert(p.filename().string()); });
  const std::vector<std::pair<std::string, void (*)(const PipelineConfig&, const fs::path&)>> stages = {
      {"ingest", ingest},       {"reduce", reduce},       {"tune_svdd", tune_svdd}, {"tune_svm", tune_svm},
      {"train_svdd", train_svdd}, {"train_svm", train_svm}, {"evaluate", evaluate}};
  for (const auto& [name, fn] : stages) {
    current = name;
    fn(config, dir.path());
  }
  dataio::set_read_observer(nullptr);
  for (const auto& [name, files] : reads) {
    if (name == "evaluate") continue;
    EXPECT_FALSE(files.count("test.csv")) << name << " read the test partition";
  }
  EXPECT_TRUE(reads["evaluate"].count("test.csv"));
  EXPECT_TRUE(reads["tune_svdd"].count("validation.csv"));
}

TEST(Pipeline, MissingInputFailsWithStageMarker) {
  testutil::TempDir dir;
  auto config = PipelineConfig::from_json_text(R"({"data": {"path": "/nonexistent/transactions.csv"}})");
  try {
    run_pipeline(config, dir.path());
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "ingest");
  }
  const auto marker = read_key_values(dir.path() / "FAILED");
  EXPECT_EQ(marker.at("stage"), "ingest");
  EXPECT_NE(marker.at("cause").find("missing file"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  testutil::TempDir dir;
  const auto cfg = dir.write("bad.json", R"({"data": {"path": "/nonexistent/transactions.csv"}})");
  const std::string out = (dir.path() / "runs").string();
  EXPECT_EQ(cli::run({"compare", "--config", cfg.string(), "--out", out}), cli::kExitStageFailure);
  bool marker = false;
  for (const auto& e : fs::directory_iterator(out)) marker |= fs::exists(e.path() / "FAILED");
  EXPECT_TRUE(marker);

  EXPECT_EQ(cli::run({"compare", "--no-such-flag"}), cli::kExitUsage);
  const auto invalid = dir.write("invalid.json", R"({"svdd": "maybe"})");
  EXPECT_EQ(cli::run({"compare", "--config", invalid.string(), "--out", out}), cli::kExitUsage);
  EXPECT_EQ(cli::run({}), cli::kExitUsage);
  EXPECT_EQ(cli::run({"generate", "--shape", "cubes", "--output", "x.csv"}), cli::kExitUsage);
}

TEST(Cli, GenerateThenEvaluatePerfectScores) {
  testutil::TempDir dir;
  const auto data_path = dir.path() / "data.csv";
  ASSERT_EQ(cli::run({"generate", "--shape", "moons", "--n-per-class", "50", "--seed", "3", "--output",
                      data_path.string()}),
            cli::kExitOk);
  const DataMatrix data = dataio::load_table(data_path, dataio::TableSchema{});
  ASSERT_EQ(data.rows(), 100u);
  // a perfect classifier stub: the score is the label itself
  std::string scores = "score,label\n";
  for (int y : data.labels) scores += std::to_string(y) + "," + std::to_string(y) + "\n";
  const auto scores_path = dir.write("scores.csv", scores);
  const std::string out = (dir.path() / "eval").string();
  ASSERT_EQ(cli::run({"evaluate", "--scores", scores_path.string(), "--out", out}), cli::kExitOk);
  EXPECT_EQ(std::stod(read_key_values(fs::path(out) / "scores_metrics.txt").at("auc")), 1.0);
}

TEST(Cli, ReduceOutputFeedsTrainUnchanged) {
  testutil::TempDir dir;
  const auto data_path = dir.path() / "data.csv";
  ASSERT_EQ(cli::run({"generate", "--shape", "gaussians", "--n-per-class", "200", "--output", data_path.string()}),
            cli::kExitOk);
  const auto reduced = dir.path() / "reduced.csv";
  ASSERT_EQ(cli::run({"reduce", "--input", data_path.string(), "--output", reduced.string()}), cli::kExitOk);
  const auto model = dir.path() / "svdd.model";
  ASSERT_EQ(cli::run({"train", "--model", "svdd", "--input", reduced.string(), "--model-out", model.string(),
                      "--sigma", "1.0", "--fracrej", "0.1"}),
            cli::kExitOk);
  EXPECT_TRUE(fs::exists(model));
  ASSERT_EQ(cli::run({"evaluate", "--model", model.string(), "--test", data_path.string()}), cli::kExitOk);
}
