#pragma once

#include "capcond/sphere.hpp"

namespace capcond {

/// min objective^T x subject to equality * x = rhs, x >= 0.
struct SimplexProblem {
  Vector objective;
  Matrix equality;
  Vector rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct SimplexResult {
  LpStatus status = LpStatus::Infeasible;
  Vector solution;
  double objective = 0.0;
  int iterations = 0;
};

/// Dense two-phase tableau simplex with Bland's rule. Throws SimplexCycling
/// if the pivot budget is exhausted.
SimplexResult simplex_solve(const SimplexProblem& problem, double tol = 1e-9);

} // namespace capcond
