#include "svddfraud/smo.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "svddfraud/errors.hpp"

namespace svddfraud {

namespace {

constexpr double kTau = 1e-12;

}  // namespace

SmoResult solve_smo(BoxQp& qp, std::vector<double> alpha, double tolerance, std::size_t max_iterations) {
  const std::size_t n = qp.kernel.size();
  if (alpha.size() != n || qp.linear.size() != n || qp.sign.size() != n || qp.upper.size() != n) {
    throw std::invalid_argument("solve_smo: inconsistent problem dimensions");
  }
  const auto& y = qp.sign;
  const auto& upper = qp.upper;
  const double s = qp.scale;

  std::vector<double> grad = qp.linear;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] == 0.0) continue;
    auto col = qp.kernel.column(i);
    const double coef = s * y[i] * alpha[i];
    for (std::size_t k = 0; k < n; ++k) grad[k] += coef * y[k] * col[k];
  }

  auto in_up = [&](std::size_t t) { return y[t] == 1 ? alpha[t] < upper[t] : alpha[t] > 0.0; };
  auto in_low = [&](std::size_t t) { return y[t] == 1 ? alpha[t] > 0.0 : alpha[t] < upper[t]; };

  SmoResult result;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::size_t iter = 0;
  while (true) {
    double gmax = -inf;
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(t) && -y[t] * grad[t] >= gmax) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    }
    double gmax2 = -inf;
    std::size_t j = n;
    if (i < n) {
      auto col_i = qp.kernel.column(i);
      const double kii = qp.kernel.diagonal(i);
      double best = inf;
      for (std::size_t t = 0; t < n; ++t) {
        if (!in_low(t)) continue;
        const double v = y[t] * grad[t];
        if (v >= gmax2) gmax2 = v;
        const double diff = gmax + v;
        if (diff > 0.0) {
          double quad = s * (kii + qp.kernel.diagonal(t) - 2.0 * col_i[t]);
          if (quad <= 0.0) quad = kTau;
          const double obj = -(diff * diff) / quad;
          if (obj <= best) {
            best = obj;
            j = t;
          }
        }
      }
    }
    result.violation = (i < n && gmax2 > -inf) ? gmax + gmax2 : 0.0;
    if (i == n || j == n || gmax + gmax2 < tolerance) break;
    if (iter >= max_iterations) {
      throw ConvergenceError("solver did not converge within " + std::to_string(max_iterations) +
                             " iterations (violation " + std::to_string(gmax + gmax2) + ")");
    }
    ++iter;

    // Both columns are needed below; the cache keeps the two most recent.
    auto col_i = qp.kernel.column(i);
    auto col_j = qp.kernel.column(j);
    const double qii = s * qp.kernel.diagonal(i);
    const double qjj = s * qp.kernel.diagonal(j);
    const double qij = s * y[i] * y[j] * col_i[j];
    const double ci = upper[i];
    const double cj = upper[j];
    const double old_i = alpha[i];
    const double old_j = alpha[j];

    if (y[i] != y[j]) {
      double quad = qii + qjj + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > ci - cj) {
        if (alpha[i] > ci) {
          alpha[i] = ci;
          alpha[j] = ci - diff;
        }
      } else if (alpha[j] > cj) {
        alpha[j] = cj;
        alpha[i] = cj + diff;
      }
    } else {
      double quad = qii + qjj - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > ci) {
        if (alpha[i] > ci) {
          alpha[i] = ci;
          alpha[j] = sum - ci;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > cj) {
        if (alpha[j] > cj) {
          alpha[j] = cj;
          alpha[i] = sum - cj;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double di = (alpha[i] - old_i) * s * y[i];
    const double dj = (alpha[j] - old_j) * s * y[j];
    for (std::size_t k = 0; k < n; ++k) grad[k] += y[k] * (col_i[k] * di + col_j[k] * dj);
  }

  result.alpha = std::move(alpha);
  result.gradient = std::move(grad);
  result.iterations = iter;
  return result;
}

}  // namespace svddfraud
