#pragma once

#include <cstddef>
#include <vector>

#include "svddfraud/kernel.hpp"

namespace svddfraud {

/// Box-constrained quadratic program shared by the one-class and two-class
/// solvers:
///
///   minimize  0.5 * a'Qa + linear'a
///   s.t.      sum_i sign_i * a_i = const   (fixed by the starting point)
///             0 <= a_i <= upper_i
///
/// with Q_ij = scale * sign_i * sign_j * K_ij.
struct BoxQp {
  KernelColumns& kernel;
  double scale = 1.0;
  std::vector<double> linear;
  std::vector<int> sign;
  std::vector<double> upper;
};

struct SmoResult {
  std::vector<double> alpha;
  /// Gradient Qa + linear at the returned alpha.
  std::vector<double> gradient;
  std::size_t iterations = 0;
  /// Maximal KKT violation m(a) - M(a) at exit.
  double violation = 0.0;
};

/// Pairwise coordinate descent with second-order working-set selection.
/// Stops once the maximal violating pair is within `tolerance`; throws
/// ConvergenceError after `max_iterations` updates.
SmoResult solve_smo(BoxQp& problem, std::vector<double> alpha, double tolerance,
                    std::size_t max_iterations);

}  // namespace svddfraud
