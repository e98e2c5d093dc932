#include "svddfraud/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "svddfraud/errors.hpp"

namespace svddfraud {

void KernelSpec::validate() const {
  if (kind == KernelKind::rbf && !(sigma > 0.0 && std::isfinite(sigma))) {
    throw ConfigError("RBF kernel requires sigma > 0");
  }
}

std::string to_string(KernelKind kind) { return kind == KernelKind::rbf ? "rbf" : "linear"; }

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "rbf") return KernelKind::rbf;
  if (name == "linear") return KernelKind::linear;
  throw ConfigError("unknown kernel: " + name);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("distance: arity mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

double kernel_eval(const KernelSpec& spec, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("kernel_eval: arity mismatch");
  if (spec.kind == KernelKind::linear) {
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return dot;
  }
  return std::exp(-squared_distance(a, b) / (spec.sigma * spec.sigma));
}

GramMatrix gram_matrix(const KernelSpec& spec, const DataMatrix& rows) {
  spec.validate();
  const std::size_t n = rows.rows();
  GramMatrix gram(n);
  for (std::size_t i = 0; i < n; ++i) {
    gram(i, i) = kernel_eval(spec, rows.row(i), rows.row(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = kernel_eval(spec, rows.row(i), rows.row(j));
      gram(i, j) = k;
      gram(j, i) = k;
    }
  }
  return gram;
}

KernelColumns::KernelColumns(const KernelSpec& spec, const DataMatrix& rows, std::size_t budget_bytes)
    : spec_(spec), rows_(rows), n_(rows.rows()), diag_(n_) {
  spec_.validate();
  for (std::size_t i = 0; i < n_; ++i) diag_[i] = kernel_eval(spec_, rows.row(i), rows.row(i));
  const std::size_t column_bytes = std::max<std::size_t>(1, n_) * sizeof(double);
  if (n_ * column_bytes <= budget_bytes) {
    full_ = gram_matrix(spec_, rows);
    evaluations_ = n_ * (n_ + 1) / 2;
    return;
  }
  const std::size_t num_slots = std::max<std::size_t>(2, budget_bytes / column_bytes);
  slots_.resize(num_slots);
  slot_stamp_.assign(num_slots, 0);
  column_of_slot_.assign(num_slots, n_);
  slot_of_column_.assign(n_, -1);
}

std::span<const double> KernelColumns::column(std::size_t i) {
  if (precomputed()) return full_.row(i);
  ++clock_;
  if (slot_of_column_[i] >= 0) {
    const auto slot = static_cast<std::size_t>(slot_of_column_[i]);
    slot_stamp_[slot] = clock_;
    return slots_[slot];
  }
  const auto victim = static_cast<std::size_t>(
      std::min_element(slot_stamp_.begin(), slot_stamp_.end()) - slot_stamp_.begin());
  if (column_of_slot_[victim] < n_) slot_of_column_[column_of_slot_[victim]] = -1;
  auto& col = slots_[victim];
  col.resize(n_);
  const auto xi = rows_.row(i);
  for (std::size_t k = 0; k < n_; ++k) col[k] = kernel_eval(spec_, xi, rows_.row(k));
  evaluations_ += n_;
  column_of_slot_[victim] = i;
  slot_of_column_[i] = static_cast<std::int64_t>(victim);
  slot_stamp_[victim] = clock_;
  return col;
}

}  // namespace svddfraud
