// Slow, independent reference computations used by the unit and acceptance
// tests. Nothing here calls into the solvers under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

inline Matrix rbf_gram(const std::vector<std::vector<double>>& x, double sigma) {
  Matrix k(x.size(), std::vector<double>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) k[i][j] = std::exp(-sq_dist(x[i], x[j]) / (sigma * sigma));
  return k;
}

inline double svdd_objective(const Matrix& k, const std::vector<double>& a) {
  double lin = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    lin += a[i] * k[i][i];
    for (std::size_t j = 0; j < a.size(); ++j) quad += a[i] * a[j] * k[i][j];
  }
  return lin - quad;
}

inline double svm_objective(const Matrix& k, const std::vector<int>& y, const std::vector<double>& a) {
  double lin = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    lin += a[i];
    for (std::size_t j = 0; j < a.size(); ++j) quad += a[i] * a[j] * y[i] * y[j] * k[i][j];
  }
  return lin - 0.5 * quad;
}

// Maximizes f over points whose first n-1 coordinates lie on a grid inside
// [0, c]^(n-1); the last coordinate is fixed by `last` and must also land in
// [0, c]. After the coarse pass, the grid is re-laid around the incumbent
// at half the spacing `rounds` times.
inline double grid_maximize(std::size_t n, double c, double step,
                            const std::function<double(const std::vector<double>&)>& last,
                            const std::function<double(const std::vector<double>&)>& f, int rounds,
                            std::vector<double>* argmax = nullptr) {
  const std::size_t free = n - 1;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x(n, 0.0);
  std::vector<double> x(n, 0.0);

  auto visit = [&](const std::vector<double>& lo, const std::vector<double>& hi, double h) {
    std::vector<std::size_t> counts(free), idx(free, 0);
    for (std::size_t d = 0; d < free; ++d)
      counts[d] = static_cast<std::size_t>(std::floor((hi[d] - lo[d]) / h + 1e-9)) + 1;
    while (true) {
      for (std::size_t d = 0; d < free; ++d) x[d] = lo[d] + h * static_cast<double>(idx[d]);
      const double tail = last(x);
      if (tail >= -1e-12 && tail <= c + 1e-12) {
        x[n - 1] = std::clamp(tail, 0.0, c);
        const double v = f(x);
        if (v > best) {
          best = v;
          best_x = x;
        }
      }
      std::size_t d = 0;
      while (d < free && ++idx[d] == counts[d]) idx[d++] = 0;
      if (d == free) break;
    }
  };

  visit(std::vector<double>(free, 0.0), std::vector<double>(free, c), step);
  double h = step;
  for (int r = 0; r < rounds; ++r) {
    std::vector<double> lo(free), hi(free);
    const double half = h;
    h *= 0.5;
    for (std::size_t d = 0; d < free; ++d) {
      lo[d] = std::max(0.0, best_x[d] - 2.0 * half);
      hi[d] = std::min(c, best_x[d] + 2.0 * half);
    }
    visit(lo, hi, h);
  }
  if (argmax) *argmax = best_x;
  return best;
}

// Brute-force optimum of the one-class dual: max a'diag(K) - a'Ka,
// sum a = 1, 0 <= a <= c. The grid in the first n-1 coordinates has
// spacing `step`.
inline double svdd_dual_grid(const Matrix& k, double c, double step = 0.05, int rounds = 12) {
  const std::size_t n = k.size();
  return grid_maximize(
      n, std::min(c, 1.0), step,
      [](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) s += x[i];
        return 1.0 - s;
      },
      [&](const std::vector<double>& a) { return svdd_objective(k, a); }, rounds);
}

// Brute-force optimum of the two-class dual: max sum a - 0.5 a'YKYa,
// sum y a = 0, 0 <= a <= c, on a box grid of spacing step_fraction * c.
inline double svm_dual_grid(const Matrix& k, const std::vector<int>& y, double c, double step_fraction = 0.05,
                            int rounds = 12) {
  const std::size_t n = k.size();
  return grid_maximize(
      n, c, step_fraction * c,
      [&](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) s += y[i] * x[i];
        return -s * y[n - 1];
      },
      [&](const std::vector<double>& a) { return svm_objective(k, y, a); }, rounds);
}

// Fraction of (positive, negative) pairs ranked correctly, ties counting half.
inline double mann_whitney_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

// Distance from row i to its m-th nearest other row, by full sort.
inline double kth_neighbor_distance(const std::vector<std::vector<double>>& x, std::size_t i, std::size_t m) {
  std::vector<double> d;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (j != i) d.push_back(std::sqrt(sq_dist(x[i], x[j])));
  std::sort(d.begin(), d.end());
  return d[m - 1];
}

// max over original rows of the distance to the nearest selected row.
inline double directed_hausdorff(const std::vector<std::vector<double>>& from,
                                 const std::vector<std::vector<double>>& to) {
  double worst = 0.0;
  for (const auto& a : from) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& b : to) nearest = std::min(nearest, sq_dist(a, b));
    worst = std::max(worst, nearest);
  }
  return std::sqrt(worst);
}

// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
inline double min_eigenvalue(Matrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-22) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0), sn = t * cs;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a[r][p], arq = a[r][q];
          a[r][p] = cs * arp - sn * arq;
          a[r][q] = sn * arp + cs * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = a[p][r], aqr = a[q][r];
          a[p][r] = cs * apr - sn * aqr;
          a[q][r] = sn * apr + cs * aqr;
        }
      }
    }
  }
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, a[i][i]);
  return m;
}

}  // namespace oracle
