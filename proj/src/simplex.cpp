#include "capcond/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace capcond {

namespace {

// Tableau layout: rows 0..m-1 are constraints, row m holds reduced costs;
// the last column is the right-hand side (objective row: minus the value).
class Tableau {
public:
  Tableau(Eigen::Index rows, Eigen::Index vars)
      : t_(Matrix::Zero(rows + 1, vars + 1)), basis_(static_cast<std::size_t>(rows)) {}

  double& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index vars() const { return t_.cols() - 1; }
  Eigen::Index rhs_col() const { return t_.cols() - 1; }
  Eigen::Index cost_row() const { return t_.rows() - 1; }
  std::vector<Eigen::Index>& basis() { return basis_; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) {
        t_.row(i) -= t_(i, c) * t_.row(r);
      }
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  /// Runs Bland's rule over columns [0, allowed). Returns false if unbounded.
  bool optimize(Eigen::Index allowed, double tol, int& iterations, int budget) {
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (t_(cost_row(), j) < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) {
        return true;
      }
      Eigen::Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a > tol) {
          const double ratio = t_(i, rhs_col()) / a;
          if (ratio < best_ratio - 1e-15 ||
              (std::abs(ratio - best_ratio) <= 1e-15 &&
               basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) {
        return false;
      }
      if (++iterations > budget) {
        throw SimplexCycling("simplex exceeded its pivot budget of " + std::to_string(budget));
      }
      pivot(leave, enter);
    }
  }

private:
  Matrix t_;
  std::vector<Eigen::Index> basis_;
};

} // namespace

SimplexResult simplex_solve(const SimplexProblem& p, double tol) {
  const Eigen::Index m = p.equality.rows();
  const Eigen::Index n = p.equality.cols();
  if (p.objective.size() != n || p.rhs.size() != m) {
    throw DimensionMismatch("simplex problem has inconsistent shapes");
  }
  if (!p.rhs.allFinite() || !p.equality.allFinite() || !p.objective.allFinite()) {
    throw DomainError("simplex problem has non-finite data");
  }

  // Phase 1: artificial columns n..n+m-1, one per row, costs 1.
  Tableau tab(m, n + m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = p.rhs[i] < 0.0 ? -1.0 : 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      tab.at(i, j) = sign * p.equality(i, j);
    }
    tab.at(i, n + i) = 1.0;
    tab.at(i, tab.rhs_col()) = sign * p.rhs[i];
    tab.basis()[static_cast<std::size_t>(i)] = n + i;
  }
  for (Eigen::Index j = 0; j <= tab.rhs_col(); ++j) {
    if (j >= n && j < n + m) {
      continue;
    }
    double s = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      s += tab.at(i, j);
    }
    tab.at(m, j) = -s;
  }

  SimplexResult out;
  const int budget = 50 * static_cast<int>(n + 2 * m) + 1000;
  tab.optimize(n + m, tol, out.iterations, budget);

  const double infeasibility = -tab.at(m, tab.rhs_col());
  const double scale = std::max(1.0, p.rhs.lpNorm<Eigen::Infinity>());
  if (infeasibility > tol * scale) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  // Drive remaining artificials out of the basis where possible; rows where
  // that fails are redundant and keep a zero-valued artificial.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < n) {
      continue;
    }
    Eigen::Index best = -1;
    double best_abs = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(tab.at(i, j)) > best_abs) {
        best_abs = std::abs(tab.at(i, j));
        best = j;
      }
    }
    if (best >= 0) {
      tab.pivot(i, best);
    }
  }

  // Phase 2 reduced costs over the original columns.
  for (Eigen::Index j = 0; j <= tab.rhs_col(); ++j) {
    double z = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index b = tab.basis()[static_cast<std::size_t>(i)];
      if (b < n) {
        z += p.objective[b] * tab.at(i, j);
      }
    }
    const double c = (j < n) ? p.objective[j] : 0.0;
    tab.at(m, j) = (j == tab.rhs_col()) ? -z : c - z;
  }

  if (!tab.optimize(n, tol, out.iterations, budget)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.solution = Vector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index b = tab.basis()[static_cast<std::size_t>(i)];
    if (b < n) {
      out.solution[b] = std::max(0.0, tab.at(i, tab.rhs_col()));
    }
  }
  out.objective = p.objective.dot(out.solution);
  return out;
}

} // namespace capcond
