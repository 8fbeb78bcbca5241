#include "capcond/bounds.hpp"

#include <algorithm>
#include <cmath>


namespace capcond {

double bound_F_threshold(const AdversarialParams& p) {
  return 13.0 * p.m * (p.m + 1) / (2.0 * p.sigma * p.delta_c);
}

double bound_F(double t, const AdversarialParams& p, int n) {
  if (!(t > 0.0)) {
    throw DomainError("bound_F needs t > 0");
  }
  const double base = 13.0 * p.m * (p.m + 1) / (2.0 * p.sigma);
  return n * std::pow(base / t, p.c_exponent);
}

double bound_I(double t, const AdversarialParams& p, int n) {
  if (!(t >= 1.0)) {
    throw DomainError("bound_I needs t >= 1");
  }
  const double c = p.c_exponent;
  const double base = 1690.0 * p.m * p.m * (p.m + 1) / (4.0 * p.sigma * p.sigma);
  return n * std::pow(base / t, c) * (std::pow(p.delta_c, -c) + c * n * std::log(t));
}

EmainBound bound_Emain(const AdversarialParams& p, int n) {
  if (n <= p.m + 1) {
    throw DomainError("bound_Emain needs n > m + 1");
  }
  const double value = 12.0 * std::log(n) + 17.0 * std::log(p.m) + 6.0 * std::log(1.0 / p.sigma) +
                       8.0 * std::log(p.H) + 29.0;
  return {value, p.beta != 0.0};
}

double Dyadic::value() const { return std::ldexp(static_cast<double>(numerator), -log2_denominator); }

std::string Dyadic::str() const {
  if (log2_denominator == 0) {
    return std::to_string(numerator);
  }
  return std::to_string(numerator) + "/2^" + std::to_string(log2_denominator);
}

Dyadic wendel_probability(int k, int m) {
  if (m < 1 || k <= m) {
    throw DomainError("Wendel probability needs k > m >= 1");
  }
  if (k > 64) {
    throw DomainError("exact Wendel probability is limited to k <= 64");
  }
  // Running C(k-1, i) by the multiplicative recurrence; every partial sum fits
  // in 64 bits because it is at most 2^{k-1}.
  std::uint64_t sum = 0;
  unsigned __int128 term = 1;
  for (int i = 0; i <= std::min(m, k - 1); ++i) {
    if (i > 0) {
      term = term * static_cast<unsigned>(k - i) / static_cast<unsigned>(i);
    }
    sum += static_cast<std::uint64_t>(term);
  }
  Dyadic out{sum, k - 1};
  while (out.log2_denominator > 0 && out.numerator % 2 == 0) {
    out.numerator /= 2;
    --out.log2_denominator;
  }
  return out;
}

double wendel_tail_partial_sum(int m, int K) {
  double total = 0.0;
  for (int k = 4 * m + 1; k <= K; ++k) {
    // Floating point form, valid beyond k = 64: sum_i C(k-1, i) 2^{-(k-1)}.
    double s = 0.0;
    for (int i = 0; i <= m; ++i) {
      s += std::exp(std::lgamma(k) - std::lgamma(i + 1.0) - std::lgamma(k - i) -
                    (k - 1) * std::log(2.0));
    }
    total += k * s;
  }
  return total;
}

double tube_volume_bound(int m, double eps, double sigma) {
  if (!(eps > 0.0) || eps > sigma / (2.0 * m) * (1.0 + 1e-12)) {
    throw ConfigError("tube bound needs 0 < eps <= sigma/(2m)");
  }
  return 13.0 * m / 4.0 * eps / sigma;
}

double multrva_bound(double x, double c, double a, double b, double xu, double xv) {
  const double xc = std::pow(x, -c);
  return c * a * b * xc * std::log(std::max(x / (xu * xv), 1.0)) +
         std::min(a * std::pow(xv, c), b * std::pow(xu, c)) * xc;
}

} // namespace capcond
