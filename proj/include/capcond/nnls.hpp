#pragma once

#include "capcond/sphere.hpp"

namespace capcond {

struct NnlsResult {
  Vector coefficients;  ///< x >= 0
  Vector fitted;        ///< A x
  int iterations = 0;
  /// max(|w_j| on the passive set, max(w_j, 0) on the active set) with
  /// w = A^T (b - A x); zero at an exact KKT point.
  double kkt_residual = 0.0;
};

/// Lawson-Hanson active-set solver for min ||A x - b|| subject to x >= 0.
/// Gives up after max_iterations outer steps (default 100 * cols) and returns
/// the last iterate; callers check kkt_residual.
NnlsResult nnls(const Matrix& a, const Vector& b, double tol = 1e-12, int max_iterations = -1);

} // namespace capcond
