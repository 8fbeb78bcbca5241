#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "capcond/sphere.hpp"

namespace capcond {

/// Rows a_1..a_n of an LP feasibility instance Ax <= 0, each a point of S^m,
/// with n > m + 1.
class Instance {
public:
  explicit Instance(std::vector<SpherePoint> rows);

  std::size_t n() const noexcept { return rows_.size(); }
  std::size_t m() const noexcept { return rows_.front().dim(); }
  std::span<const SpherePoint> rows() const noexcept { return rows_; }
  const SpherePoint& operator[](std::size_t i) const { return rows_[i]; }

  /// A_k = (a_1, ..., a_k); requires k > m + 1.
  Instance prefix(std::size_t k) const;
  /// Rows as columns of an (m+1) x n matrix.
  Matrix columns() const { return as_columns(rows_); }

private:
  std::vector<SpherePoint> rows_;
};

/// Max-row angular distance between two instances of equal shape.
double instance_distance(const Instance& a, const Instance& b);

enum class FeasibilityClass { StrictlyFeasible, IllPosed, Infeasible };

/// "SF", "IP" or "IF".
std::string_view class_code(FeasibilityClass c);

} // namespace capcond
