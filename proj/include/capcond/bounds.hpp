#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "capcond/samplers.hpp"

namespace capcond {

/// Smallest t for which the feasible tail bound applies: 13m(m+1)/(2 sigma delta_c).
double bound_F_threshold(const AdversarialParams& p);
/// n (13m(m+1)/(2 sigma))^c t^{-c}, unclamped.
double bound_F(double t, const AdversarialParams& p, int n);
/// n (1690 m^2 (m+1)/(4 sigma^2))^c t^{-c} (delta_c^{-c} + c n ln t), t >= 1.
double bound_I(double t, const AdversarialParams& p, int n);

struct EmainBound {
  double value;
  bool informational;  ///< true when beta > 0: no explicit constant is available
};

/// 12 ln n + 17 ln m + 6 ln(1/sigma) + 8 ln H + 29. Requires n > m + 1.
EmainBound bound_Emain(const AdversarialParams& p, int n);

/// Exact dyadic rational numerator / 2^log2_denominator in lowest terms.
struct Dyadic {
  std::uint64_t numerator;
  int log2_denominator;

  double value() const;
  std::string str() const;
  bool operator==(const Dyadic&) const = default;
};

/// Probability that k uniform points of S^m are feasible:
/// 2^{-(k-1)} sum_{i=0}^m C(k-1, i). Requires m < k <= 64.
Dyadic wendel_probability(int k, int m);

/// sum_{k=4m+1}^{K} k p(k, m), evaluated in floating point.
double wendel_tail_partial_sum(int m, int K);

/// 13m/4 * eps/sigma; requires eps <= sigma/(2m).
double tube_volume_bound(int m, double eps, double sigma);

/// c a b x^{-c} ln max{x/(xu xv), 1} + min{a xv^c, b xu^c} x^{-c}.
double multrva_bound(double x, double c, double a, double b, double xu, double xv);

} // namespace capcond
