#include "capcond/instance.hpp"

#include <algorithm>
#include <string>

namespace capcond {

Instance::Instance(std::vector<SpherePoint> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) {
    throw DomainError("instance has no rows");
  }
  const std::size_t d = rows_.front().ambient_dim();
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (rows_[i].ambient_dim() != d) {
      throw DimensionMismatch("row " + std::to_string(i + 1) + " has dimension " +
                              std::to_string(rows_[i].ambient_dim()) + ", expected " +
                              std::to_string(d));
    }
  }
  if (rows_.size() <= m() + 1) {
    throw DomainError("instance needs n > m + 1 rows (n=" + std::to_string(rows_.size()) +
                      ", m=" + std::to_string(m()) + ")");
  }
}

Instance Instance::prefix(std::size_t k) const {
  if (k > n()) {
    throw DomainError("prefix length exceeds instance size");
  }
  return Instance(std::vector<SpherePoint>(rows_.begin(), rows_.begin() + static_cast<long>(k)));
}

double instance_distance(const Instance& a, const Instance& b) {
  if (a.n() != b.n()) {
    throw DimensionMismatch("instances have different row counts");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i) {
    d = std::max(d, angular_distance(a[i], b[i]));
  }
  return d;
}

std::string_view class_code(FeasibilityClass c) {
  switch (c) {
  case FeasibilityClass::StrictlyFeasible:
    return "SF";
  case FeasibilityClass::IllPosed:
    return "IP";
  case FeasibilityClass::Infeasible:
    return "IF";
  }
  return "??";
}

} // namespace capcond
