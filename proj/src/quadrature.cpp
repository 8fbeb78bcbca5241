#include "capcond/quadrature.hpp"

#include <string>

#include "capcond/errors.hpp"
#include "capcond/sphere.hpp"

namespace capcond {

namespace {

constexpr double kQuadTol = 1e-13;

void check_upper_limit(double alpha) {
  if (!(alpha > 0.0) || alpha > kHalfPi + 1e-15) {
    throw DomainError("upper limit must lie in (0, pi/2], got " + std::to_string(alpha));
  }
}

} // namespace

double integral_I(double k, double alpha) {
  check_upper_limit(alpha);
  if (!(k > 0.0)) {
    throw DomainError("order k must be positive, got " + std::to_string(k));
  }
  return integrate_sine_power(k - 1.0, [](double) { return 1.0; }, alpha, kQuadTol).value;
}

IntegralTable tabulate_J(int m, int k, double alpha) {
  check_upper_limit(alpha);
  if (k < 1 || k > m) {
    throw DomainError("J_{m,k} needs 1 <= k <= m, got m=" + std::to_string(m) +
                      " k=" + std::to_string(k));
  }
  const int cos_power = m - k;
  const auto res = integrate_sine_power(
      static_cast<double>(k - 1), [cos_power](double t) { return std::pow(std::cos(t), cos_power); },
      alpha, kQuadTol);
  return {m, k, alpha, res.value, res.evaluations};
}

double integral_J(int m, int k, double alpha) { return tabulate_J(m, k, alpha).value; }

} // namespace capcond
