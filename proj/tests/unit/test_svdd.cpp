#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "svddfraud/errors.hpp"
#include "svddfraud/svdd.hpp"
#include "test_util.hpp"

using namespace svddfraud;

namespace {

DataMatrix gaussian_rows(std::size_t n, std::uint64_t seed, double sd = 1.0) {
  testutil::Rng rng(seed);
  DataMatrix m(2);
  for (std::size_t i = 0; i < n; ++i) {
    const double row[] = {rng.normal(0, sd), rng.normal(0, sd)};
    m.append_row(row);
  }
  return m;
}

std::vector<std::vector<double>> as_vectors(const DataMatrix& m) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
  return out;
}

// Full-length alpha vector indexed like the training rows.
std::vector<double> dense_alphas(const SvddModel& m) {
  std::vector<double> a(m.training_rows, 0.0);
  for (std::size_t s = 0; s < m.support_count(); ++s) a[m.support_indices[s]] = m.alphas[s];
  return a;
}

}  // namespace

TEST(Svdd, SinglePoint) {
  DataMatrix m(2);
  const double p[] = {0.2, 0.4};
  m.append_row(p);
  SvddConfig cfg;
  cfg.box_c = 1.0;
  const SvddModel model = train_svdd(m, cfg);
  ASSERT_EQ(model.support_count(), 1u);
  EXPECT_EQ(model.alphas[0], 1.0);
  EXPECT_NEAR(model.radius_sq, 0.0, 1e-15);
  EXPECT_NEAR(kernel_distance_sq(model, p), 0.0, 1e-15);
  EXPECT_NEAR(decision_score(model, p), 0.0, 1e-15);
  const double q[] = {0.3, 0.4};
  EXPECT_LT(decision_score(model, q), 0.0);
}

TEST(Svdd, TwoPointsSymmetric) {
  DataMatrix m(2);
  const double a[] = {0.0, 0.0}, b[] = {1.0, 0.5};
  m.append_row(a);
  m.append_row(b);
  for (double c : {0.5, 0.7, 1.0}) {
    SvddConfig cfg;
    cfg.box_c = c;
    const SvddModel model = train_svdd(m, cfg);
    const auto alpha = dense_alphas(model);
    EXPECT_NEAR(alpha[0], 0.5, 1e-9);
    EXPECT_NEAR(alpha[1], 0.5, 1e-9);
  }
}

TEST(Svdd, InfeasibleAndInvalidConfig) {
  const DataMatrix m = gaussian_rows(10, 1);
  SvddConfig cfg;
  cfg.box_c = 0.05;  // C * N = 0.5
  EXPECT_THROW(train_svdd(m, cfg), ConfigError);
  SvddConfig bad;
  bad.fracrej = 1.5;
  EXPECT_THROW(train_svdd(m, bad), ConfigError);
  EXPECT_THROW(train_svdd(DataMatrix(2), SvddConfig{}), DataError);
}

TEST(Svdd, FracrejMapsToBox) {
  const DataMatrix m = gaussian_rows(40, 2);
  SvddConfig cfg;
  cfg.fracrej = 0.1;
  const SvddModel model = train_svdd(m, cfg);
  EXPECT_DOUBLE_EQ(model.box_c, 1.0 / (40 * 0.1));
}

TEST(Svdd, NonConvergenceIsReported) {
  const DataMatrix m = gaussian_rows(50, 3);
  SvddConfig cfg;
  cfg.fracrej = 0.1;
  cfg.max_iterations = 1;
  EXPECT_THROW(train_svdd(m, cfg), ConvergenceError);
}

TEST(Svdd, FiveRandomPointsMatchSimplexGrid) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    testutil::Rng rng(seed);
    DataMatrix m(2);
    for (int i = 0; i < 5; ++i) {
      const double row[] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      m.append_row(row);
    }
    SvddConfig cfg;
    cfg.kernel = {KernelKind::rbf, 1.0};
    cfg.box_c = 1.0;
    cfg.solver_tolerance = 1e-9;
    const SvddModel model = train_svdd(m, cfg);
    const double grid = oracle::svdd_dual_grid(oracle::rbf_gram(as_vectors(m), 1.0), 1.0);
    EXPECT_NEAR(dual_objective(model), grid, 1e-3) << "seed " << seed;
    // the grid is a lower bound on the true maximum
    EXPECT_GE(dual_objective(model), grid - 1e-9);
  }
}

TEST(Svdd, DistanceMatchesIndependentIdentity) {
  const DataMatrix m = gaussian_rows(5, 4);
  SvddConfig cfg;
  cfg.kernel = {KernelKind::rbf, 0.9};
  cfg.box_c = 0.4;
  const SvddModel model = train_svdd(m, cfg);
  const auto x = as_vectors(m);
  const auto a = dense_alphas(model);
  testutil::Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const std::vector<double> z{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    double cross = 0.0, offset = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      cross += a[i] * std::exp(-oracle::sq_dist(x[i], z) / 0.81);
      for (std::size_t j = 0; j < x.size(); ++j) offset += a[i] * a[j] * std::exp(-oracle::sq_dist(x[i], x[j]) / 0.81);
    }
    EXPECT_NEAR(kernel_distance_sq(model, z), 1.0 - 2.0 * cross + offset, 1e-12);
  }
  const std::vector<double> far{1e3, 1e3};
  EXPECT_NEAR(kernel_distance_sq(model, far), 1.0 + model.offset_term, 1e-12);
  const std::vector<double> wrong{1.0};
  EXPECT_THROW(kernel_distance_sq(model, wrong), std::invalid_argument);
}

TEST(Svdd, KktConditionsAndConstraints) {
  for (double fracrej : {0.01, 0.05, 0.1}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const DataMatrix m = gaussian_rows(100, 50 + seed);
      SvddConfig cfg;
      cfg.kernel = {KernelKind::rbf, 1.5};
      cfg.fracrej = fracrej;
      const SvddModel model = train_svdd(m, cfg);
      const auto a = dense_alphas(model);
      const double tol = 1e-4, c = model.box_c;
      EXPECT_NEAR(std::accumulate(a.begin(), a.end(), 0.0), 1.0, tol);
      for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_GE(a[i], -tol);
        ASSERT_LE(a[i], c + tol);
        const double d = kernel_distance_sq(model, m.row(i));
        const double thr = 1e-8 * c;
        if (a[i] <= thr) EXPECT_LE(d, model.radius_sq + tol);
        else if (a[i] >= c - thr) EXPECT_GE(d, model.radius_sq - tol);
        else EXPECT_NEAR(d, model.radius_sq, tol);
      }
    }
  }
}

TEST(Svdd, BoundarySupportVectorScoresNearZero) {
  const DataMatrix m = gaussian_rows(60, 12);
  SvddConfig cfg;
  cfg.fracrej = 0.05;
  const SvddModel model = train_svdd(m, cfg);
  std::size_t checked = 0;
  for (std::size_t s = 0; s < model.support_count(); ++s) {
    if (model.alphas[s] >= model.box_c * (1 - 1e-8)) continue;
    EXPECT_LE(std::abs(decision_score(model, model.support_row(s))), cfg.solver_tolerance);
    ++checked;
  }
  EXPECT_GT(checked, 0u);
}

TEST(Svdd, FarOutlierRejected) {
  const DataMatrix m = gaussian_rows(50, 21, 0.1);
  SvddConfig cfg;
  cfg.kernel = {KernelKind::rbf, 0.3};
  cfg.fracrej = 0.05;
  const SvddModel model = train_svdd(m, cfg);
  // ~10 radii away from a ball of radius ~0.3
  const std::vector<double> probe{3.0, 0.0};
  EXPECT_LT(decision_score(model, probe), 0.0);
  DataMatrix probes(2);
  probes.append_row(probe);
  const double center[] = {0.0, 0.0};
  probes.append_row(center);
  EXPECT_EQ(classify(model, probes), (std::vector<int>{1, 0}));
}

TEST(Svdd, RejectionRateOnGaussianData) {
  const DataMatrix m = gaussian_rows(1000, 77);
  for (double fracrej : {0.01, 0.05, 0.1}) {
    SvddConfig cfg;
    cfg.kernel = {KernelKind::rbf, 2.0};
    cfg.fracrej = fracrej;
    const SvddModel model = train_svdd(m, cfg);
    const auto pred = classify(model, m);
    const double rate = static_cast<double>(std::count(pred.begin(), pred.end(), 1)) / 1000.0;
    EXPECT_GE(rate, 0.0);
    EXPECT_LE(rate, 2.0 * fracrej) << "fracrej " << fracrej;
  }
}

TEST(Svdd, PermutationInvariance) {
  const DataMatrix m = gaussian_rows(80, 31);
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(4));
  const DataMatrix shuffled = m.select(perm);
  SvddConfig cfg;
  cfg.kernel = {KernelKind::rbf, 1.2};
  cfg.fracrej = 0.05;
  cfg.solver_tolerance = 1e-10;
  const SvddModel a = train_svdd(m, cfg);
  const SvddModel b = train_svdd(shuffled, cfg);
  testutil::Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::vector<double> z{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    EXPECT_NEAR(decision_score(a, z), decision_score(b, z), 1e-9);
  }
}

TEST(Svdd, CachedKernelGivesSameModel) {
  const DataMatrix m = gaussian_rows(120, 5);
  SvddConfig cfg;
  cfg.fracrej = 0.05;
  const SvddModel full = train_svdd(m, cfg);
  cfg.cache_bytes = 4 * 120 * sizeof(double);
  const SvddModel cached = train_svdd(m, cfg);
  EXPECT_EQ(full.alphas, cached.alphas);
  EXPECT_EQ(full.radius_sq, cached.radius_sq);
}

TEST(Svdd, SaturatedBoxFallsBackToMaxDistance) {
  // C = 1/N forces every alpha to C, so no unbounded support vector exists
  const DataMatrix m = gaussian_rows(8, 6);
  SvddConfig cfg;
  cfg.box_c = 1.0 / 8.0;
  const SvddModel model = train_svdd(m, cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) worst = std::max(worst, kernel_distance_sq(model, m.row(i)));
  EXPECT_NEAR(model.radius_sq, worst, 1e-12);
  EXPECT_GE(model.radius_sq, 0.0);
}
