#include "capcond/feasibility.hpp"

#include <string>

#include "capcond/simplex.hpp"

namespace capcond {

namespace {

void require_points(std::span<const SpherePoint> points) {
  if (points.empty()) {
    throw DomainError("need at least one point");
  }
}

// Variables: u (d), v (d) with x = u - v, box slacks p, q (d each), row
// slacks w (n); extra columns appended by the caller.
struct BoxLayout {
  Eigen::Index d, n, extra;
  Eigen::Index u(Eigen::Index j) const { return j; }
  Eigen::Index v(Eigen::Index j) const { return d + j; }
  Eigen::Index p(Eigen::Index j) const { return 2 * d + j; }
  Eigen::Index q(Eigen::Index j) const { return 3 * d + j; }
  Eigen::Index w(Eigen::Index i) const { return 4 * d + i; }
  Eigen::Index extra_col(Eigen::Index k) const { return 4 * d + n + k; }
  Eigen::Index cols() const { return 4 * d + n + extra; }
  Eigen::Index rows() const { return n + 2 * d; }
};

SimplexProblem box_problem(const Matrix& a, const BoxLayout& l) {
  SimplexProblem p;
  p.objective = Vector::Zero(l.cols());
  p.equality = Matrix::Zero(l.rows(), l.cols());
  p.rhs = Vector::Zero(l.rows());
  for (Eigen::Index i = 0; i < l.n; ++i) {
    for (Eigen::Index j = 0; j < l.d; ++j) {
      p.equality(i, l.u(j)) = a(j, i);
      p.equality(i, l.v(j)) = -a(j, i);
    }
    p.equality(i, l.w(i)) = 1.0;
  }
  for (Eigen::Index j = 0; j < l.d; ++j) {
    p.equality(l.n + j, l.u(j)) = 1.0;
    p.equality(l.n + j, l.p(j)) = 1.0;
    p.rhs[l.n + j] = 1.0;
    p.equality(l.n + l.d + j, l.v(j)) = 1.0;
    p.equality(l.n + l.d + j, l.q(j)) = 1.0;
    p.rhs[l.n + l.d + j] = 1.0;
  }
  return p;
}

} // namespace

bool origin_in_conv(std::span<const SpherePoint> points) {
  require_points(points);
  const Matrix a = as_columns(points);
  const Eigen::Index d = a.rows();
  const Eigen::Index n = a.cols();
  SimplexProblem p;
  p.objective = Vector::Zero(n);
  p.equality = Matrix::Zero(d + 1, n);
  p.equality.topRows(d) = a;
  p.equality.row(d).setOnes();
  p.rhs = Vector::Zero(d + 1);
  p.rhs[d] = 1.0;
  return simplex_solve(p, kLpFeasibilityTol).status == LpStatus::Optimal;
}

double max_feasibility_slack(std::span<const SpherePoint> points) {
  require_points(points);
  const Matrix a = as_columns(points);
  // t = t_plus - t_minus enters every row: <a_i, x> + t + w_i = 0.
  const BoxLayout l{a.rows(), a.cols(), 2};
  SimplexProblem p = box_problem(a, l);
  for (Eigen::Index i = 0; i < l.n; ++i) {
    p.equality(i, l.extra_col(0)) = 1.0;
    p.equality(i, l.extra_col(1)) = -1.0;
  }
  p.objective[l.extra_col(0)] = -1.0;
  p.objective[l.extra_col(1)] = 1.0;
  const auto res = simplex_solve(p, kLpFeasibilityTol);
  if (res.status != LpStatus::Optimal) {
    throw Error("feasibility slack LP did not reach an optimum");
  }
  return -res.objective;
}

bool has_nonzero_solution(std::span<const SpherePoint> points) {
  require_points(points);
  const Matrix a = as_columns(points);
  const BoxLayout l{a.rows(), a.cols(), 0};
  SimplexProblem p = box_problem(a, l);
  for (Eigen::Index j = 0; j < l.d; ++j) {
    for (const double sign : {1.0, -1.0}) {
      p.objective.setZero();
      p.objective[l.u(j)] = -sign;
      p.objective[l.v(j)] = sign;
      const auto res = simplex_solve(p, kLpFeasibilityTol);
      if (res.status == LpStatus::Optimal && -res.objective > kLpFeasibilityTol) {
        return true;
      }
    }
  }
  return false;
}

FeasibilityClass gordan_classify(std::span<const SpherePoint> points) {
  require_points(points);
  const std::size_t m = points.front().dim();
  if (points.size() <= m + 1) {
    throw DomainError("classification needs n > m + 1 (n=" + std::to_string(points.size()) +
                      ", m=" + std::to_string(m) + ")");
  }
  if (max_feasibility_slack(points) > kLpFeasibilityTol) {
    return FeasibilityClass::StrictlyFeasible;
  }
  return has_nonzero_solution(points) ? FeasibilityClass::IllPosed : FeasibilityClass::Infeasible;
}

FeasibilityClass gordan_classify(const Instance& a) { return gordan_classify(a.rows()); }

} // namespace capcond
