#include "svddfraud/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "svddfraud/errors.hpp"
#include "svddfraud/seeding.hpp"

namespace svddfraud::dataio {

namespace {

std::mutex g_observer_mutex;
ReadObserver g_observer;

void notify_read(const std::filesystem::path& path) {
  std::lock_guard lock(g_observer_mutex);
  if (g_observer) g_observer(path);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delim, start);
    std::string_view field(line.data() + start, (pos == std::string::npos ? line.size() : pos) - start);
    out.emplace_back(trim(field));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  // strtod accepts the hex and exponent forms we write; from_chars for
  // double is missing on older toolchains.
  std::string buf(text);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

void set_read_observer(ReadObserver observer) {
  std::lock_guard lock(g_observer_mutex);
  g_observer = std::move(observer);
}

TableSchema paysim_schema() {
  TableSchema schema;
  schema.features = {"step", "type", "amount", "oldbalanceOrg", "newbalanceOrig",
                     "oldbalanceDest", "newbalanceDest"};
  schema.label_column = "isFraud";
  schema.categorical = {"type"};
  return schema;
}

DataMatrix load_table(const std::filesystem::path& path, const TableSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("missing file: " + path.string());
  notify_read(path);

  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (is_blank(line)) continue;
    header = split_line(line, schema.delimiter);
    break;
  }
  if (header.empty()) throw DataError("no header row in " + path.string());

  auto column_of = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("column not found: " + name);
    return static_cast<std::size_t>(it - header.begin());
  };

  std::vector<std::string> features = schema.features;
  if (features.empty()) {
    for (const auto& name : header) {
      if (name != schema.label_column) features.push_back(name);
    }
  }
  std::vector<std::size_t> feature_pos;
  std::vector<bool> is_categorical;
  for (const auto& name : features) {
    feature_pos.push_back(column_of(name));
    is_categorical.push_back(std::find(schema.categorical.begin(), schema.categorical.end(), name) !=
                             schema.categorical.end());
  }
  const bool labeled = !schema.label_column.empty();
  const std::size_t label_pos = labeled ? column_of(schema.label_column) : 0;

  // Categorical cells are collected as strings first so the index mapping
  // depends only on the set of distinct values, not on row order.
  std::vector<std::vector<std::string>> raw_categories(features.size());
  DataMatrix data(features);
  std::vector<double> row(features.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto fields = split_line(line, schema.delimiter);
    if (fields.size() != header.size()) {
      throw DataError("malformed row at line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < features.size(); ++c) {
      const std::string& cell = fields[feature_pos[c]];
      if (is_categorical[c]) {
        raw_categories[c].push_back(cell);
        row[c] = 0.0;
      } else if (!parse_double(cell, row[c])) {
        throw DataError("malformed row at line " + std::to_string(line_no) + ": non-numeric value '" +
                        cell + "' in column " + features[c]);
      }
    }
    if (labeled) {
      double label = 0.0;
      if (!parse_double(fields[label_pos], label) || (label != 0.0 && label != 1.0)) {
        throw DataError("unknown label value '" + fields[label_pos] + "' at line " + std::to_string(line_no));
      }
      data.append_row(row, static_cast<int>(label));
    } else {
      data.append_row(row);
    }
  }
  if (data.rows() == 0) throw DataError("no data rows in " + path.string());

  for (std::size_t c = 0; c < features.size(); ++c) {
    if (!is_categorical[c]) continue;
    std::set<std::string> distinct(raw_categories[c].begin(), raw_categories[c].end());
    std::map<std::string, double> index;
    for (const auto& v : distinct) index.emplace(v, static_cast<double>(index.size()));
    for (std::size_t r = 0; r < data.rows(); ++r) data.row(r)[c] = index.at(raw_categories[c][r]);
  }
  return data;
}

void write_table(const std::filesystem::path& path, const DataMatrix& data, char delimiter) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (std::size_t c = 0; c < data.cols(); ++c) {
    if (c) out << delimiter;
    out << data.columns[c];
  }
  if (data.labeled()) out << delimiter << "label";
  out << '\n';
  for (std::size_t r = 0; r < data.rows(); ++r) {
    auto row = data.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << delimiter;
      out << format_double(row[c]);
    }
    if (data.labeled()) out << delimiter << data.labels[r];
    out << '\n';
  }
}

DataMatrix normalize_by_column_max(const DataMatrix& data) {
  if (data.rows() == 0) throw DataError("normalize_by_column_max: no rows");
  std::vector<double> maxima(data.cols(), 0.0);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    auto row = data.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) maxima[c] = std::max(maxima[c], std::abs(row[c]));
  }
  return apply_stored_normalization(data, maxima);
}

DataMatrix apply_stored_normalization(const DataMatrix& data, const std::vector<double>& maxima) {
  if (maxima.size() != data.cols()) {
    throw DataError("apply_stored_normalization: arity mismatch (" + std::to_string(maxima.size()) +
                    " maxima for " + std::to_string(data.cols()) + " columns)");
  }
  DataMatrix out = data;
  out.column_maxima = maxima;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (maxima[c] != 0.0) row[c] /= maxima[c];
    }
  }
  return out;
}

void write_maxima(const std::filesystem::path& path, const DataMatrix& normalized) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "svddfraud-normalization 1\n";
  for (std::size_t c = 0; c < normalized.cols(); ++c) {
    out << normalized.columns[c] << ' ' << format_double(normalized.column_maxima.at(c)) << '\n';
  }
}

std::vector<double> read_maxima(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("missing file: " + path.string());
  notify_read(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("svddfraud-normalization 1", 0) != 0) {
    throw DataError("not a normalization file: " + path.string());
  }
  std::vector<double> maxima;
  while (std::getline(in, line)) {
    if (is_blank(line)) continue;
    auto space = line.rfind(' ');
    double v = 0.0;
    if (space == std::string::npos || !parse_double(trim(std::string_view(line).substr(space + 1)), v)) {
      throw DataError("malformed normalization line: " + line);
    }
    maxima.push_back(v);
  }
  return maxima;
}

void SplitSpec::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ConfigError("test_fraction must lie in (0, 1)");
  if (!(train_target_fraction > 0.0 && train_target_fraction <= 1.0)) {
    throw ConfigError("train_target_fraction must lie in (0, 1]");
  }
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
    throw ConfigError("validation_fraction must lie in [0, 1)");
  }
}

ProtocolSplit split_for_protocol(const DataMatrix& data, const SplitSpec& spec) {
  spec.validate();
  if (!data.labeled()) throw DataError("split_for_protocol: labels required");
  if (data.count_label(0) == 0 || data.count_label(1) == 0) {
    throw DataError("split_for_protocol: dataset must contain both classes");
  }
  const std::size_t n = data.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(spec.seed);
  std::shuffle(order.begin(), order.end(), rng);

  const auto n_test = static_cast<std::size_t>(std::llround(spec.test_fraction * static_cast<double>(n)));
  ProtocolSplit split;
  split.test_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
  std::vector<std::size_t> train_order(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
  split.svm_indices = train_order;

  std::vector<std::size_t> target_pool;
  for (std::size_t idx : train_order) {
    if (data.labels[idx] == 0) target_pool.push_back(idx);
  }
  auto n_target = static_cast<std::size_t>(
      std::llround(spec.train_target_fraction * static_cast<double>(target_pool.size())));
  if (n_target == 0 && !target_pool.empty()) n_target = 1;
  split.svdd_indices.assign(target_pool.begin(), target_pool.begin() + static_cast<std::ptrdiff_t>(n_target));

  std::vector<bool> in_svdd(n, false);
  for (std::size_t idx : split.svdd_indices) in_svdd[idx] = true;
  for (int label : {0, 1}) {
    std::vector<std::size_t> pool;
    for (std::size_t idx : train_order) {
      if (!in_svdd[idx] && data.labels[idx] == label) pool.push_back(idx);
    }
    auto take = static_cast<std::size_t>(std::llround(spec.validation_fraction * static_cast<double>(pool.size())));
    if (take == 0 && spec.validation_fraction > 0.0 && !pool.empty()) take = 1;
    split.validation_indices.insert(split.validation_indices.end(), pool.begin(),
                                    pool.begin() + static_cast<std::ptrdiff_t>(take));
  }

  for (auto* list : {&split.test_indices, &split.svm_indices, &split.svdd_indices, &split.validation_indices}) {
    std::sort(list->begin(), list->end());
  }
  split.test = data.select(split.test_indices);
  split.svm_train = data.select(split.svm_indices);
  split.svdd_train = data.select(split.svdd_indices);
  split.validation = data.select(split.validation_indices);
  return split;
}

std::vector<std::size_t> stratified_subsample(const DataMatrix& data, std::size_t count, std::uint64_t seed) {
  if (!data.labeled()) throw DataError("stratified_subsample: labels required");
  const std::size_t n = data.rows();
  if (count >= n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  auto positives = data.indices_with_label(1);
  auto negatives = data.indices_with_label(0);
  Rng rng(seed);
  std::shuffle(positives.begin(), positives.end(), rng);
  std::shuffle(negatives.begin(), negatives.end(), rng);
  auto n_pos = static_cast<std::size_t>(
      std::llround(static_cast<double>(count) * static_cast<double>(positives.size()) / static_cast<double>(n)));
  if (n_pos == 0 && !positives.empty() && count > 1) n_pos = 1;
  if (n_pos == count && !negatives.empty() && count > 1) n_pos = count - 1;
  n_pos = std::min(n_pos, positives.size());
  const std::size_t n_neg = std::min(count - n_pos, negatives.size());
  std::vector<std::size_t> out(positives.begin(), positives.begin() + static_cast<std::ptrdiff_t>(n_pos));
  out.insert(out.end(), negatives.begin(), negatives.begin() + static_cast<std::ptrdiff_t>(n_neg));
  std::sort(out.begin(), out.end());
  return out;
}

Shape parse_shape(const std::string& name) {
  if (name == "rings") return Shape::rings;
  if (name == "moons") return Shape::moons;
  if (name == "gaussians") return Shape::gaussians;
  throw ConfigError("unknown shape: " + name);
}

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::rings: return "rings";
    case Shape::moons: return "moons";
    case Shape::gaussians: return "gaussians";
  }
  return "unknown";
}

DataMatrix generate_two_class_shapes(std::size_t n_per_class, Shape shape, double noise, std::uint64_t seed) {
  if (n_per_class == 0) throw ConfigError("n_per_class must be at least 1");
  if (!(noise >= 0.0)) throw ConfigError("noise must be non-negative");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto jitter = [&] { return noise > 0.0 ? noise * gauss(rng) : 0.0; };
  constexpr double pi = std::numbers::pi;

  DataMatrix data(std::vector<std::string>{"x", "y"});
  data.values.reserve(4 * n_per_class);
  for (int label : {0, 1}) {
    for (std::size_t i = 0; i < n_per_class; ++i) {
      double p[2];
      switch (shape) {
        case Shape::gaussians: {
          const double center = label == 0 ? 1.0 : 4.0;
          p[0] = center + jitter();
          p[1] = center + jitter();
          break;
        }
        case Shape::moons: {
          const double t = pi * unit(rng);
          if (label == 0) {
            p[0] = std::cos(t);
            p[1] = std::sin(t);
          } else {
            p[0] = 1.0 - std::cos(t);
            p[1] = 0.5 - std::sin(t);
          }
          p[0] += jitter();
          p[1] += jitter();
          break;
        }
        case Shape::rings: {
          const double t = 2.0 * pi * unit(rng);
          const double radius = (label == 0 ? 1.0 : 2.5) + jitter();
          p[0] = radius * std::cos(t);
          p[1] = radius * std::sin(t);
          break;
        }
      }
      data.append_row(p, label);
    }
  }
  return data;
}

DataMatrix generate_fraud_like(const FraudLikeSpec& spec) {
  if (spec.rows == 0 || spec.dims == 0) throw ConfigError("generate_fraud_like: rows and dims must be positive");
  if (!(spec.fraud_fraction > 0.0 && spec.fraud_fraction < 1.0)) {
    throw ConfigError("generate_fraud_like: fraud_fraction must lie in (0, 1)");
  }
  Rng rng(spec.seed);
  const auto n_fraud = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(spec.fraud_fraction * static_cast<double>(spec.rows))));
  std::vector<int> labels(spec.rows, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(std::min(n_fraud, spec.rows)), 1);
  std::shuffle(labels.begin(), labels.end(), rng);

  if (spec.clusters == 0) throw ConfigError("generate_fraud_like: clusters must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> box(0.0, spec.box_size);
  std::uniform_int_distribution<std::size_t> pick_mode(0, spec.clusters - 1);
  std::optional<std::student_t_distribution<double>> heavy;
  if (spec.tail_dof > 0.0) heavy.emplace(spec.tail_dof);

  const double center = spec.box_size / 2.0;
  std::vector<std::vector<double>> modes(spec.clusters, std::vector<double>(spec.dims, center));
  for (std::size_t m = 1; m < spec.clusters; ++m) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(m - 1) / static_cast<double>(spec.clusters - 1);
    modes[m][0] += spec.box_size * 0.25 * std::cos(angle);
    if (spec.dims > 1) modes[m][1] += spec.box_size * 0.25 * std::sin(angle);
  }

  DataMatrix data(spec.dims);
  data.values.reserve(spec.rows * spec.dims);
  std::vector<double> row(spec.dims);
  for (int label : labels) {
    if (label == 1) {
      for (double& v : row) v = box(rng);
    } else {
      const auto& mode = modes[pick_mode(rng)];
      for (std::size_t d = 0; d < spec.dims; ++d) {
        row[d] = mode[d] + spec.core_sd * (heavy ? (*heavy)(rng) : gauss(rng));
      }
    }
    data.append_row(row, label);
  }
  return data;
}

}  // namespace svddfraud::dataio
