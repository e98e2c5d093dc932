#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace svddfraud::eval {

/// Fraud (label 1) is the positive class.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
};

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

ConfusionCounts confusion(std::span<const int> predictions, std::span<const int> truths);

/// Harmonic mean 2PR / (P + R); 0 when both are 0.
double f_measure(double precision, double recall);

/// Zero denominators yield 0 and, unless `warn` is false, log a warning.
PrfScores precision_recall_f(const ConfusionCounts& counts, bool warn = true);

/// Scores are "higher = more fraud-like". Thresholds sweep from high to
/// low; rows with equal scores enter in one step, so ties contribute the
/// trapezoid (equivalently half a correctly ordered pair).
RocCurve roc_and_auc(std::span<const double> scores, std::span<const int> truths);

/// Wall-clock durations per phase, in insertion order.
class TimingReport {
 public:
  void record(std::string phase, double seconds);
  const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }
  /// Seconds for `phase`, or a negative value when absent.
  double seconds(const std::string& phase) const;

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

/// Runs `work`, records its steady-clock duration under `phase`, and
/// returns the work's result (nothing for void work).
template <class Work>
decltype(auto) timed(TimingReport& report, std::string phase, Work&& work) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  if constexpr (std::is_void_v<std::invoke_result_t<Work>>) {
    std::forward<Work>(work)();
    report.record(std::move(phase), elapsed());
  } else {
    auto result = std::forward<Work>(work)();
    report.record(std::move(phase), elapsed());
    return result;
  }
}

void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve);

/// Standalone SVG chart overlaying the named curves.
void write_roc_svg(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, RocCurve>>& curves);

void write_timing(const std::filesystem::path& path, const TimingReport& report);

}  // namespace svddfraud::eval
