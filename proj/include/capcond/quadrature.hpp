#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

namespace capcond {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) {
      gauss += kGaussWeights[j / 2] * sum;
    }
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of f over [a, b]: the segment
/// with the largest error estimate is bisected until the summed estimate
/// drops below abs_tol or max_segments is reached.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = 1e-12,
                           int max_segments = 4000) {
  QuadratureResult out;
  if (a == b) {
    return out;
  }
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gauss_kronrod_15(f, a, b);
  out.evaluations = 15;
  double total = first.value;
  double error = first.error;
  heap.push(first);
  int segments = 1;
  while (error > abs_tol && segments < max_segments) {
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  // Recompute from the leaves so cancellation in the running sums is not kept.
  total = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.abs_error = error;
  return out;
}

/// Integral of (sin t)^power * weight(t) over [0, alpha] for power > -1.
///
/// For negative powers the substitution t = alpha * s^{1/(power+1)} removes
/// the endpoint singularity before adaptive quadrature.
template <class W>
QuadratureResult integrate_sine_power(double power, W&& weight, double alpha,
                                      double abs_tol = 1e-12) {
  if (power >= 0.0) {
    return integrate([&](double t) { return std::pow(std::sin(t), power) * weight(t); }, 0.0,
                     alpha, abs_tol);
  }
  const double kappa = power + 1.0;
  const double scale = std::pow(alpha, kappa) / kappa;
  return integrate(
      [&](double s) {
        const double t = alpha * std::pow(s, 1.0 / kappa);
        const double sinc = t > 0.0 ? std::sin(t) / t : 1.0;
        return scale * std::pow(sinc, power) * weight(t);
      },
      0.0, 1.0, abs_tol);
}

/// Tabulated J_{m,k}(alpha) with the quadrature resolution used.
struct IntegralTable {
  int m;
  int k;
  double alpha;
  double value;
  int node_count;
};

/// I_k(alpha) = integral_0^alpha (sin t)^{k-1} dt, real order k > 0,
/// alpha in (0, pi/2].
double integral_I(double k, double alpha);

/// J_{m,k}(alpha) = integral_0^alpha (sin r)^{k-1} (cos r)^{m-k} dr for 1 <= k <= m.
double integral_J(int m, int k, double alpha);
IntegralTable tabulate_J(int m, int k, double alpha);

} // namespace capcond
