#include "svddfraud/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "svddfraud/errors.hpp"
#include "svddfraud/model_io.hpp"
#include "svddfraud/seeding.hpp"

namespace svddfraud::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kSvddTrain = "svdd_train.csv";
constexpr const char* kSvmTrain = "svm_train.csv";
constexpr const char* kValidation = "validation.csv";
constexpr const char* kTest = "test.csv";
constexpr const char* kReduced = "reduced.csv";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

/// Accepts "tune", a settings object, or an object with "tune": true.
bool parse_tune_flag(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "tune") throw ConfigError("expected \"tune\" or a settings object");
    return true;
  }
  return j.value("tune", false);
}

DataMatrix read_stage_table(const fs::path& path) {
  dataio::TableSchema schema;
  schema.label_column = "label";
  return dataio::load_table(path, schema);
}

void append_timing(const fs::path& dir, const eval::TimingReport& report) {
  std::ofstream out(dir / "timing.txt", std::ios::app);
  char buf[64];
  for (const auto& [phase, secs] : report.entries()) {
    std::snprintf(buf, sizeof buf, "%.6f", secs);
    out << phase << '=' << buf << '\n';
  }
}

template <class Body>
void run_stage(const std::string& stage, Body&& body) {
  try {
    spdlog::info("stage {}", stage);
    body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

void write_params(const fs::path& path, const std::map<std::string, std::string>& values) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "# svddfraud params v1\n";
  for (const auto& [k, v] : values) out << k << '=' << v << '\n';
}

double number(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw DataError("missing key '" + key + "'");
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end != it->second.c_str() + it->second.size()) throw DataError("bad number for '" + key + "'");
  return v;
}

SvddConfig read_svdd_params(const PipelineConfig& config, const fs::path& dir) {
  const auto kv = read_key_values(dir / "svdd_params.txt");
  SvddConfig cfg = config.svdd;
  cfg.kernel.kind = parse_kernel_kind(kv.at("kernel"));
  cfg.kernel.sigma = number(kv, "sigma");
  cfg.fracrej = number(kv, "fracrej");
  cfg.box_c.reset();
  return cfg;
}

SvmConfig read_svm_params(const PipelineConfig& config, const fs::path& dir) {
  const auto kv = read_key_values(dir / "svm_params.txt");
  SvmConfig cfg = config.svm;
  cfg.kernel.kind = parse_kernel_kind(kv.at("kernel"));
  cfg.kernel.sigma = number(kv, "sigma");
  cfg.box_c = number(kv, "box_c");
  return cfg;
}

DataMatrix load_source(const PipelineConfig& config) {
  if (!config.synthetic) return dataio::load_table(config.input, config.schema);
  const auto& s = *config.synthetic;
  const auto seed = stage_seed(config, "generate");
  if (s.kind == "fraud_like") {
    dataio::FraudLikeSpec spec;
    spec.rows = s.rows;
    spec.fraud_fraction = s.fraud_fraction;
    spec.dims = s.dims;
    spec.core_sd = s.core_sd;
    spec.box_size = s.box_size;
    spec.clusters = s.clusters;
    spec.tail_dof = s.tail_dof;
    spec.seed = seed;
    return dataio::generate_fraud_like(spec);
  }
  return dataio::generate_two_class_shapes(s.n_per_class, dataio::parse_shape(s.kind), s.noise, seed);
}

struct NamedModel {
  std::string name;
  std::string file;
};

}  // namespace

PipelineConfig PipelineConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  PipelineConfig c;
  try {
    read_opt(j, "seed", c.seed);
    if (j.contains("data")) {
      const auto& d = j.at("data");
      if (d.contains("synthetic")) {
        const auto& s = d.at("synthetic");
        SyntheticSource src;
        read_opt(s, "kind", src.kind);
        read_opt(s, "rows", src.rows);
        read_opt(s, "fraud_fraction", src.fraud_fraction);
        read_opt(s, "dims", src.dims);
        read_opt(s, "core_sd", src.core_sd);
        read_opt(s, "box_size", src.box_size);
        read_opt(s, "clusters", src.clusters);
        read_opt(s, "tail_dof", src.tail_dof);
        read_opt(s, "n_per_class", src.n_per_class);
        read_opt(s, "noise", src.noise);
        c.synthetic = src;
      } else {
        if (d.value("schema", std::string{}) == "paysim") c.schema = dataio::paysim_schema();
        std::string path;
        read_opt(d, "path", path);
        c.input = path;
        std::string delim;
        read_opt(d, "delimiter", delim);
        if (!delim.empty()) c.schema.delimiter = delim == "\\t" ? '\t' : delim.front();
        read_opt(d, "features", c.schema.features);
        read_opt(d, "label", c.schema.label_column);
        read_opt(d, "categorical", c.schema.categorical);
      }
    }
    if (j.contains("split")) {
      const auto& s = j.at("split");
      read_opt(s, "test_fraction", c.split.test_fraction);
      read_opt(s, "train_target_fraction", c.split.train_target_fraction);
      read_opt(s, "validation_fraction", c.split.validation_fraction);
    }
    if (j.contains("reduction")) {
      const auto& r = j.at("reduction");
      read_opt(r, "enabled", c.reduce);
      read_opt(r, "minpts", c.reduction.minpts);
      if (r.contains("eps") && !r.at("eps").is_null()) c.reduction.eps = r.at("eps").get<double>();
    }
    if (j.contains("svdd")) {
      const auto& s = j.at("svdd");
      c.tune_svdd = parse_tune_flag(s);
      if (s.is_object()) {
        read_opt(s, "sigma", c.svdd.kernel.sigma);
        read_opt(s, "fracrej", c.svdd.fracrej);
        read_opt(s, "tolerance", c.svdd.solver_tolerance);
        read_opt(s, "max_iterations", c.svdd.max_iterations);
      }
    }
    if (j.contains("svm")) {
      const auto& s = j.at("svm");
      c.tune_svm = parse_tune_flag(s);
      if (s.is_object()) {
        read_opt(s, "sigma", c.svm.kernel.sigma);
        read_opt(s, "box_c", c.svm.box_c);
        read_opt(s, "tolerance", c.svm.solver_tolerance);
        read_opt(s, "max_iterations", c.svm.max_iterations);
        read_opt(s, "positive_weight", c.svm.positive_weight);
        read_opt(s, "tune_max_rows", c.svm_tune_max_rows);
        read_opt(s, "max_train_rows", c.svm_max_train_rows);
      }
    }
    if (j.contains("ga")) {
      const auto& g = j.at("ga");
      read_opt(g, "population_size", c.ga.population_size);
      read_opt(g, "generations", c.ga.generations);
      read_opt(g, "crossover_rate", c.ga.crossover_rate);
      read_opt(g, "mutation_rate", c.ga.mutation_rate);
      read_opt(g, "mutation_scale", c.ga.mutation_scale);
      read_opt(g, "elitism_count", c.ga.elitism_count);
      auto bounds = [&](const char* key, tuner::GeneBounds& b) {
        if (g.contains(key)) {
          const auto& arr = g.at(key);
          b = {arr.at(0).get<double>(), arr.at(1).get<double>()};
        }
      };
      bounds("svdd_log10_sigma", c.svdd_space.log_sigma);
      bounds("svdd_fracrej", c.svdd_space.fracrej);
      bounds("svm_log10_sigma", c.svm_space.log_sigma);
      bounds("svm_log10_box_c", c.svm_space.log_box_c);
    }
    read_opt(j, "folds", c.folds);
    read_opt(j, "stratified_folds", c.stratified_folds);
    read_opt(j, "equal_budget", c.equal_budget);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  c.split.validate();
  c.reduction.validate();
  return c;
}

PipelineConfig PipelineConfig::from_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string PipelineConfig::to_json_text() const {
  json j;
  j["seed"] = seed;
  if (synthetic) {
    const auto& s = *synthetic;
    j["data"]["synthetic"] = {{"kind", s.kind},       {"rows", s.rows},         {"fraud_fraction", s.fraud_fraction},
                              {"dims", s.dims},       {"core_sd", s.core_sd},   {"box_size", s.box_size}, {"clusters", s.clusters}, {"tail_dof", s.tail_dof},
                              {"n_per_class", s.n_per_class}, {"noise", s.noise}};
  } else {
    j["data"] = {{"path", input.string()},
                 {"delimiter", std::string(1, schema.delimiter)},
                 {"features", schema.features},
                 {"label", schema.label_column},
                 {"categorical", schema.categorical}};
  }
  j["split"] = {{"test_fraction", split.test_fraction},
                {"train_target_fraction", split.train_target_fraction},
                {"validation_fraction", split.validation_fraction}};
  j["reduction"] = {{"enabled", reduce}, {"minpts", reduction.minpts}};
  j["reduction"]["eps"] = reduction.eps ? json(*reduction.eps) : json(nullptr);
  j["svdd"] = {{"tune", tune_svdd},
               {"sigma", svdd.kernel.sigma},
               {"fracrej", svdd.fracrej},
               {"tolerance", svdd.solver_tolerance},
               {"max_iterations", svdd.max_iterations}};
  j["svm"] = {{"tune", tune_svm},
              {"sigma", svm.kernel.sigma},
              {"box_c", svm.box_c},
              {"tolerance", svm.solver_tolerance},
              {"max_iterations", svm.max_iterations},
              {"positive_weight", svm.positive_weight},
              {"tune_max_rows", svm_tune_max_rows},
              {"max_train_rows", svm_max_train_rows}};
  j["ga"] = {{"population_size", ga.population_size},
             {"generations", ga.generations},
             {"crossover_rate", ga.crossover_rate},
             {"mutation_rate", ga.mutation_rate},
             {"mutation_scale", ga.mutation_scale},
             {"elitism_count", ga.elitism_count},
             {"svdd_log10_sigma", {svdd_space.log_sigma.lo, svdd_space.log_sigma.hi}},
             {"svdd_fracrej", {svdd_space.fracrej.lo, svdd_space.fracrej.hi}},
             {"svm_log10_sigma", {svm_space.log_sigma.lo, svm_space.log_sigma.hi}},
             {"svm_log10_box_c", {svm_space.log_box_c.lo, svm_space.log_box_c.hi}}};
  j["folds"] = folds;
  j["stratified_folds"] = stratified_folds;
  j["equal_budget"] = equal_budget;
  return j.dump(2);
}

std::string PipelineConfig::hash() const {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json_text())));
  return buf;
}

std::uint64_t stage_seed(const PipelineConfig& config, const std::string& stage) {
  return derive_seed(config.seed, stage);
}

fs::path run_directory(const PipelineConfig& config, const fs::path& base) {
  return base / ("run-" + config.hash());
}

std::map<std::string, std::string> read_key_values(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("missing file: " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("malformed line in " + path.string() + ": " + line);
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

ScoredMetrics score_metrics(std::span<const double> scores, std::span<const int> predictions,
                            std::span<const int> truths) {
  ScoredMetrics m;
  m.counts = eval::confusion(predictions, truths);
  m.prf = eval::precision_recall_f(m.counts);
  m.roc = eval::roc_and_auc(scores, truths);
  return m;
}

void write_metrics(const fs::path& path, const std::string& model, std::size_t train_rows,
                   const ScoredMetrics& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "# svddfraud metrics v1\n"
      << "model=" << model << '\n'
      << "train_rows=" << train_rows << '\n'
      << "test_rows=" << m.counts.total() << '\n'
      << "auc=" << fmt(m.roc.auc) << '\n'
      << "precision=" << fmt(m.prf.precision) << '\n'
      << "recall=" << fmt(m.prf.recall) << '\n'
      << "f_measure=" << fmt(m.prf.f_measure) << '\n'
      << "tp=" << m.counts.tp << '\n'
      << "fp=" << m.counts.fp << '\n'
      << "tn=" << m.counts.tn << '\n'
      << "fn=" << m.counts.fn << '\n';
}

void ingest(const PipelineConfig& config, const fs::path& dir) {
  run_stage("ingest", [&] {
    fs::create_directories(dir);
    eval::TimingReport timing;
    const DataMatrix raw = eval::timed(timing, "ingest_load", [&] { return load_source(config); });
    dataio::SplitSpec spec = config.split;
    spec.seed = stage_seed(config, "split");
    const auto split = dataio::split_for_protocol(raw, spec);
    // Maxima come from the training partition only; held-out rows reuse them.
    const DataMatrix svm_train = dataio::normalize_by_column_max(split.svm_train);
    const auto& maxima = svm_train.column_maxima;
    dataio::write_table(dir / kSvmTrain, svm_train);
    dataio::write_table(dir / kSvddTrain, dataio::apply_stored_normalization(split.svdd_train, maxima));
    dataio::write_table(dir / kValidation, dataio::apply_stored_normalization(split.validation, maxima));
    dataio::write_table(dir / kTest, dataio::apply_stored_normalization(split.test, maxima));
    dataio::write_maxima(dir / "normalization.txt", svm_train);
    append_timing(dir, timing);
    spdlog::info("ingest: {} rows -> svdd_train {}, svm_train {}, validation {}, test {}", raw.rows(),
                 split.svdd_train.rows(), split.svm_train.rows(), split.validation.rows(), split.test.rows());
  });
}

void reduce(const PipelineConfig& config, const fs::path& dir) {
  run_stage("reduce", [&] {
    const DataMatrix target = read_stage_table(dir / kSvddTrain);
    eval::TimingReport timing;
    if (config.reduce) {
      const auto result = eval::timed(timing, "reduce", [&] { return redbscan::reduce(target, config.reduction); });
      redbscan::write_reduction(dir / kReduced, result, config.reduction.minpts, target.rows());
      spdlog::info("reduce: {} -> {} rows (eps {:.6g})", target.rows(), result.selected.rows(), result.eps_used);
    } else {
      redbscan::ReductionResult identity;
      identity.selected = target;
      redbscan::write_reduction(dir / kReduced, identity, config.reduction.minpts, target.rows());
    }
    append_timing(dir, timing);
  });
}

void tune_svdd(const PipelineConfig& config, const fs::path& dir) {
  run_stage("tune_svdd", [&] {
    SvddConfig chosen = config.svdd;
    eval::TimingReport timing;
    if (config.tune_svdd) {
      const DataMatrix train = read_stage_table(dir / kReduced);
      const DataMatrix validation = read_stage_table(dir / kValidation);
      if (validation.count_label(0) == 0 || validation.count_label(1) == 0) {
        throw DataError("validation slice needs both classes for SVDD tuning");
      }
      tuner::GaConfig ga = config.ga;
      ga.seed = stage_seed(config, "tune_svdd");
      ga.bounds = config.svdd_space.bounds();
      const auto result = eval::timed(timing, "tune_svdd", [&] {
        return tuner::run_ga(ga, tuner::svdd_validation_objective(train, validation, config.svdd));
      });
      tuner::write_history(dir / "tuning_svdd.csv", result);
      chosen = tuner::svdd_config_from_genes(result.best.genes, config.svdd);
      spdlog::info("tune_svdd: sigma {:.4g}, fracrej {:.4g}, validation AUC {:.4f}", chosen.kernel.sigma,
                   chosen.fracrej, result.best.fitness);
    }
    write_params(dir / "svdd_params.txt", {{"model", "svdd"},
                                           {"kernel", to_string(chosen.kernel.kind)},
                                           {"sigma", fmt(chosen.kernel.sigma)},
                                           {"fracrej", fmt(chosen.fracrej)}});
    append_timing(dir, timing);
  });
}

void tune_svm(const PipelineConfig& config, const fs::path& dir) {
  run_stage("tune_svm", [&] {
    SvmConfig chosen = config.svm;
    eval::TimingReport timing;
    if (config.tune_svm) {
      const DataMatrix full = read_stage_table(dir / kSvmTrain);
      const auto rows =
          dataio::stratified_subsample(full, config.svm_tune_max_rows, stage_seed(config, "svm_tune_subsample"));
      const DataMatrix data = full.select(rows);
      tuner::GaConfig ga = config.ga;
      ga.seed = stage_seed(config, "tune_svm");
      ga.bounds = config.svm_space.bounds();
      const auto result = eval::timed(timing, "tune_svm", [&] {
        return tuner::run_ga(ga, tuner::svm_cv_objective(data, config.svm, config.folds, stage_seed(config, "cv"),
                                                         config.stratified_folds));
      });
      tuner::write_history(dir / "tuning_svm.csv", result);
      chosen = tuner::svm_config_from_genes(result.best.genes, config.svm);
      spdlog::info("tune_svm: sigma {:.4g}, C {:.4g}, mean CV AUC {:.4f}", chosen.kernel.sigma, chosen.box_c,
                   result.best.fitness);
    }
    write_params(dir / "svm_params.txt", {{"model", "svm"},
                                          {"kernel", to_string(chosen.kernel.kind)},
                                          {"sigma", fmt(chosen.kernel.sigma)},
                                          {"box_c", fmt(chosen.box_c)}});
    append_timing(dir, timing);
  });
}

void train_svdd(const PipelineConfig& config, const fs::path& dir) {
  run_stage("train_svdd", [&] {
    const SvddConfig cfg = read_svdd_params(config, dir);
    eval::TimingReport timing;
    const DataMatrix reduced = read_stage_table(dir / kReduced);
    const auto model = eval::timed(timing, "train_svdd", [&] { return svddfraud::train_svdd(reduced, cfg); });
    model_io::save(dir / "svdd.model", model);
    if (config.equal_budget) {
      const DataMatrix full = read_stage_table(dir / kSvddTrain);
      const auto unreduced =
          eval::timed(timing, "train_svdd_unreduced", [&] { return svddfraud::train_svdd(full, cfg); });
      model_io::save(dir / "svdd_unreduced.model", unreduced);
    }
    append_timing(dir, timing);
  });
}

void train_svm(const PipelineConfig& config, const fs::path& dir) {
  run_stage("train_svm", [&] {
    const SvmConfig cfg = read_svm_params(config, dir);
    eval::TimingReport timing;
    DataMatrix train = read_stage_table(dir / kSvmTrain);
    if (config.svm_max_train_rows > 0 && train.rows() > config.svm_max_train_rows) {
      train = train.select(
          dataio::stratified_subsample(train, config.svm_max_train_rows, stage_seed(config, "svm_train_cap")));
    }
    const auto model = eval::timed(timing, "train_svm", [&] { return svddfraud::train_svm(train, cfg); });
    model_io::save(dir / "svm.model", model);
    if (config.equal_budget) {
      const std::size_t budget = read_stage_table(dir / kReduced).rows();
      const DataMatrix small =
          train.select(dataio::stratified_subsample(train, budget, stage_seed(config, "equal_budget")));
      const auto equal = eval::timed(timing, "train_svm_equal", [&] { return svddfraud::train_svm(small, cfg); });
      model_io::save(dir / "svm_equal.model", equal);
    }
    append_timing(dir, timing);
  });
}

void evaluate(const PipelineConfig& config, const fs::path& dir) {
  (void)config;
  run_stage("evaluate", [&] {
    const DataMatrix test = read_stage_table(dir / kTest);
    const std::vector<NamedModel> candidates = {
        {"svdd", "svdd.model"}, {"svdd_unreduced", "svdd_unreduced.model"},
        {"svm", "svm.model"},   {"svm_equal", "svm_equal.model"}};
    std::vector<std::pair<std::string, eval::RocCurve>> curves;
    std::vector<std::pair<std::string, ScoredMetrics>> table;
    std::vector<std::size_t> train_rows;
    for (const auto& c : candidates) {
      if (!fs::exists(dir / c.file)) continue;
      const auto any = model_io::load(dir / c.file);
      std::vector<double> scores(test.rows());
      std::vector<int> predictions(test.rows());
      std::size_t rows = 0;
      if (const auto* svdd = std::get_if<SvddModel>(&any)) {
        for (std::size_t r = 0; r < test.rows(); ++r) {
          const double d = decision_score(*svdd, test.row(r));
          scores[r] = -d;
          predictions[r] = d < 0.0 ? 1 : 0;
        }
        rows = svdd->training_rows;
      } else {
        const auto& svm = std::get<SvmModel>(any);
        for (std::size_t r = 0; r < test.rows(); ++r) {
          scores[r] = svm_decision(svm, test.row(r));
          predictions[r] = scores[r] > 0.0 ? 1 : 0;
        }
        rows = svm.training_rows;
      }
      auto metrics = score_metrics(scores, predictions, test.labels);
      write_metrics(dir / (c.name + "_metrics.txt"), c.name, rows, metrics);
      eval::write_roc_csv(dir / ("roc_" + c.name + ".csv"), metrics.roc);
      curves.emplace_back(c.name, metrics.roc);
      table.emplace_back(c.name, std::move(metrics));
      train_rows.push_back(rows);
    }
    if (table.empty()) throw DataError("no model files found in " + dir.string());
    eval::write_roc_svg(dir / "roc.svg", curves);

    std::ofstream cmp(dir / "comparison.txt");
    cmp << "# svddfraud comparison v1\n";
    for (const auto& [name, m] : table) cmp << "auc_" << name << '=' << fmt(m.roc.auc) << '\n';

    std::ofstream md(dir / "report.md");
    char buf[64];
    md << "| metric |";
    for (const auto& [name, m] : table) md << ' ' << name << " |";
    md << "\n|---|";
    for (std::size_t i = 0; i < table.size(); ++i) md << "---|";
    md << '\n';
    auto row = [&](const char* label, auto get) {
      md << "| " << label << " |";
      for (const auto& [name, m] : table) {
        std::snprintf(buf, sizeof buf, " %.4f |", get(m));
        md << buf;
      }
      md << '\n';
    };
    row("AUC", [](const ScoredMetrics& m) { return m.roc.auc; });
    row("precision", [](const ScoredMetrics& m) { return m.prf.precision; });
    row("recall", [](const ScoredMetrics& m) { return m.prf.recall; });
    row("f-measure", [](const ScoredMetrics& m) { return m.prf.f_measure; });
    md << "| training rows |";
    for (std::size_t rows : train_rows) md << ' ' << rows << " |";
    md << '\n';
  });
}

void run_pipeline(const PipelineConfig& config, const fs::path& dir) {
  fs::create_directories(dir);
  fs::remove(dir / "FAILED");
  fs::remove(dir / "timing.txt");
  {
    std::ofstream(dir / "config.json") << config.to_json_text() << '\n';
  }
  try {
    ingest(config, dir);
    reduce(config, dir);
    tune_svdd(config, dir);
    tune_svm(config, dir);
    train_svdd(config, dir);
    train_svm(config, dir);
    evaluate(config, dir);
  } catch (const StageError& e) {
    std::ofstream marker(dir / "FAILED");
    marker << "stage=" << e.stage() << '\n' << "cause=" << e.what() << '\n';
    throw;
  }
}

void run_equal_budget_comparison(const PipelineConfig& config, const fs::path& dir) {
  PipelineConfig c = config;
  c.equal_budget = true;
  run_pipeline(c, dir);
}

}  // namespace svddfraud::pipeline
