#pragma once

#include <span>

#include "capcond/instance.hpp"

namespace capcond {

inline constexpr double kLpFeasibilityTol = 1e-9;

/// True iff 0 lies in the euclidean convex hull of the points.
bool origin_in_conv(std::span<const SpherePoint> points);

/// Optimal t of: max t s.t. <a_i, x> <= -t, ||x||_inf <= 1.
double max_feasibility_slack(std::span<const SpherePoint> points);

/// True iff some x != 0 satisfies <a_i, x> <= 0 for all i. Decided by
/// maximizing +-x_j over {Ax <= 0, ||x||_inf <= 1} for every coordinate j.
bool has_nonzero_solution(std::span<const SpherePoint> points);

/// Feasibility class from linear programming alone (Gordan's alternative);
/// no geometry involved. Requires n > m + 1.
FeasibilityClass gordan_classify(std::span<const SpherePoint> points);
FeasibilityClass gordan_classify(const Instance& a);

} // namespace capcond
