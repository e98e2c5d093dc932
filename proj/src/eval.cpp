#include "svddfraud/eval.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "svddfraud/errors.hpp"

namespace svddfraud::eval {

ConfusionCounts confusion(std::span<const int> predictions, std::span<const int> truths) {
  if (predictions.size() != truths.size()) throw std::invalid_argument("confusion: length mismatch");
  if (predictions.empty()) throw std::invalid_argument("confusion: empty input");
  ConfusionCounts c;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const bool p = predictions[i] == 1;
    const bool t = truths[i] == 1;
    if (p && t) ++c.tp;
    else if (p) ++c.fp;
    else if (t) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double f_measure(double precision, double recall) {
  if (!(precision + recall > 0.0)) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

PrfScores precision_recall_f(const ConfusionCounts& c, bool warn) {
  PrfScores s;
  const auto tp = static_cast<double>(c.tp);
  if (c.tp + c.fp > 0) {
    s.precision = tp / static_cast<double>(c.tp + c.fp);
  } else if (warn) {
    spdlog::warn("precision undefined (no positive predictions); reporting 0");
  }
  if (c.tp + c.fn > 0) {
    s.recall = tp / static_cast<double>(c.tp + c.fn);
  } else if (warn) {
    spdlog::warn("recall undefined (no positive truths); reporting 0");
  }
  s.f_measure = f_measure(s.precision, s.recall);
  return s;
}

RocCurve roc_and_auc(std::span<const double> scores, std::span<const int> truths) {
  if (scores.size() != truths.size()) throw std::invalid_argument("roc_and_auc: length mismatch");
  const auto positives = static_cast<std::size_t>(std::count(truths.begin(), truths.end(), 1));
  const std::size_t negatives = truths.size() - positives;
  if (positives == 0 || negatives == 0) throw DataError("roc_and_auc: both classes required");
  if (std::any_of(scores.begin(), scores.end(), [](double v) { return std::isnan(v); })) {
    throw DataError("roc_and_auc: NaN score");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  // Integrate in counts (tp * fp units) so the area is exact until the
  // final division.
  double area = 0.0;
  for (std::size_t k = 0; k < order.size();) {
    const double threshold = scores[order[k]];
    const std::size_t prev_tp = tp;
    const std::size_t prev_fp = fp;
    while (k < order.size() && scores[order[k]] == threshold) {
      if (truths[order[k]] == 1) ++tp;
      else ++fp;
      ++k;
    }
    area += static_cast<double>(fp - prev_fp) * static_cast<double>(tp + prev_tp) / 2.0;
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                            static_cast<double>(tp) / static_cast<double>(positives)});
  }
  curve.auc = area / (static_cast<double>(positives) * static_cast<double>(negatives));
  return curve;
}

void TimingReport::record(std::string phase, double seconds) {
  entries_.emplace_back(std::move(phase), std::max(0.0, seconds));
}

double TimingReport::seconds(const std::string& phase) const {
  for (const auto& [name, secs] : entries_) {
    if (name == phase) return secs;
  }
  return -1.0;
}

void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "fpr,tpr\n";
  char buf[64];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.fpr, p.tpr);
    out << buf;
  }
}

void write_roc_svg(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, RocCurve>>& curves) {
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  constexpr double size = 400.0;
  constexpr double margin = 50.0;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  char buf[160];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
      << size + 2 * margin << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin + size << "\" x2=\"" << margin + size << "\" y2=\""
      << margin << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = t / 4.0;
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%.2f</text>\n",
                  margin + v * size, margin + size + 16, v);
    out << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.2f</text>\n",
                  margin - 6, margin + size - v * size + 4, v);
    out << buf;
  }
  out << "<text x=\"" << margin + size / 2 << "\" y=\"" << margin + size + 36
      << "\" text-anchor=\"middle\">False positive rate</text>\n";
  out << "<text x=\"14\" y=\"" << margin + size / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << margin + size / 2 << ")\">True positive rate</text>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kColors[c % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : curves[c].second.points) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", margin + p.fpr * size, margin + size - p.tpr * size);
      out << buf;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" fill=\"%s\">%s (AUC %.4f)</text>\n",
                  margin + size * 0.45, margin + size - 20.0 - 16.0 * static_cast<double>(c), color,
                  curves[c].first.c_str(), curves[c].second.auc);
    out << buf;
  }
  out << "</svg>\n";
}

void write_timing(const std::filesystem::path& path, const TimingReport& report) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "# svddfraud timing v1 (wall-clock seconds)\n";
  char buf[64];
  for (const auto& [phase, secs] : report.entries()) {
    std::snprintf(buf, sizeof buf, "%.6f", secs);
    out << phase << '=' << buf << '\n';
  }
}

}  // namespace svddfraud::eval
