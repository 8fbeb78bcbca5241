#include "capcond/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace capcond {

namespace {

Vector solve_passive(const Matrix& a, const Vector& b, const std::vector<Eigen::Index>& passive) {
  Matrix sub(a.rows(), static_cast<Eigen::Index>(passive.size()));
  for (std::size_t j = 0; j < passive.size(); ++j) {
    sub.col(static_cast<Eigen::Index>(j)) = a.col(passive[j]);
  }
  return sub.colPivHouseholderQr().solve(b);
}

double kkt_residual(const Vector& w, const std::vector<bool>& in_passive) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    r = std::max(r, in_passive[static_cast<std::size_t>(j)] ? std::abs(w[j]) : std::max(w[j], 0.0));
  }
  return r;
}

} // namespace

NnlsResult nnls(const Matrix& a, const Vector& b, double tol, int max_iterations) {
  const Eigen::Index cols = a.cols();
  if (max_iterations < 0) {
    max_iterations = 100 * static_cast<int>(std::max<Eigen::Index>(cols, 1));
  }
  Vector x = Vector::Zero(cols);
  std::vector<bool> in_passive(static_cast<std::size_t>(cols), false);
  // Columns whose entry was undone without moving x; skipped until x moves.
  std::vector<bool> blocked(static_cast<std::size_t>(cols), false);
  std::vector<Eigen::Index> passive;
  Vector w = a.transpose() * b;
  int iter = 0;

  while (iter < max_iterations) {
    Eigen::Index enter = -1;
    double best = tol;
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      if (!in_passive[uj] && !blocked[uj] && w[j] > best) {
        best = w[j];
        enter = j;
      }
    }
    if (enter < 0) {
      break;
    }
    ++iter;
    const Vector x_before = x;
    passive.push_back(enter);
    in_passive[static_cast<std::size_t>(enter)] = true;

    while (!passive.empty()) {
      const Vector s = solve_passive(a, b, passive);
      if ((s.array() > 0.0).all()) {
        for (std::size_t i = 0; i < passive.size(); ++i) {
          x[passive[i]] = s[static_cast<Eigen::Index>(i)];
        }
        break;
      }
      // Step from x toward s until the first passive coefficient hits zero.
      double step = 1.0;
      for (std::size_t i = 0; i < passive.size(); ++i) {
        const double si = s[static_cast<Eigen::Index>(i)];
        if (si <= 0.0) {
          const double xi = x[passive[i]];
          step = std::min(step, xi / (xi - si));
        }
      }
      for (std::size_t i = 0; i < passive.size(); ++i) {
        const Eigen::Index j = passive[i];
        x[j] += step * (s[static_cast<Eigen::Index>(i)] - x[j]);
      }
      std::erase_if(passive, [&](Eigen::Index j) {
        if (x[j] <= 1e-15) {
          x[j] = 0.0;
          in_passive[static_cast<std::size_t>(j)] = false;
          return true;
        }
        return false;
      });
    }

    if (!in_passive[static_cast<std::size_t>(enter)] && (x - x_before).lpNorm<Eigen::Infinity>() == 0.0) {
      blocked[static_cast<std::size_t>(enter)] = true;
    } else {
      std::fill(blocked.begin(), blocked.end(), false);
    }
    w = a.transpose() * (b - a * x);
  }

  NnlsResult out;
  out.fitted = a * x;
  out.coefficients = std::move(x);
  out.iterations = iter;
  out.kkt_residual = kkt_residual(a.transpose() * (b - out.fitted), in_passive);
  return out;
}

} // namespace capcond
