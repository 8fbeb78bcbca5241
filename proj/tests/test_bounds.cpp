#include <doctest.h>

#include "capcond/bounds.hpp"
#include "oracles.hpp"

using namespace capcond;

TEST_CASE("feasible tail bound") {
  const auto p = make_adversarial_params(2, kPi / 6, 0);
  CHECK(p.sigma == doctest::Approx(0.5));
  CHECK(bound_F(7800, p, 5) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(bound_F_threshold(p) == doctest::Approx(78 / p.delta_c));
  CHECK(bound_F(1e30, p, 5) < 1e-12);
  // Raw value is not clamped.
  CHECK(bound_F(78, p, 5) == doctest::Approx(5.0));

  const auto wide = make_adversarial_params(2, kPi / 2, 0);
  CHECK(bound_F(7800, wide, 5) / bound_F(7800, p, 5) == doctest::Approx(std::pow(2.0, -0.5)));
  const auto b1 = make_adversarial_params(2, kPi / 6, 1);
  const auto wide1 = make_adversarial_params(2, kPi / 2, 1);
  CHECK(bound_F(500, wide1, 7) / bound_F(500, b1, 7) == doctest::Approx(std::pow(2.0, -0.25)));
}

TEST_CASE("infeasible tail bound") {
  for (double beta : {0.0, 1.0}) {
    const auto p = make_adversarial_params(2, kPi / 6, beta);
    const double c = p.c_exponent;
    const double base = 1690.0 * 4 * 3 / (4 * 0.25);
    CHECK(bound_I(1, p, 5) == doctest::Approx(5 * std::pow(base, c) * std::pow(p.delta_c, -c)));
    double last = bound_I(std::exp(1 / c), p, 5);
    for (double t = std::exp(1 / c) * 1.25; t < 1e12; t *= 1.25) {
      const double v = bound_I(t, p, 5);
      CHECK(v < last);
      last = v;
    }
  }
  const auto p = make_adversarial_params(2, kPi / 6, 0);
  CHECK_THROWS_AS(bound_I(0.5, p, 5), DomainError);

  // Larger c gives the smaller power factor.
  const auto p0 = make_adversarial_params(3, kPi / 4, 0);
  const auto p1 = make_adversarial_params(3, kPi / 4, 1.5);
  for (double t : {2.0, 10.0, 1e6}) {
    CHECK(std::pow(t, -p0.c_exponent) < std::pow(t, -p1.c_exponent));
  }
}

TEST_CASE("expectation bound") {
  const auto p = make_adversarial_params(2, kPi / 6, 0);
  const auto e = bound_Emain(p, 5);
  CHECK(e.value == doctest::Approx(12 * std::log(5.0) + 17 * std::log(2.0) + 6 * std::log(2.0) +
                                   29));
  CHECK_FALSE(e.informational);
  const auto one = make_adversarial_params(2, kPi / 2, 0);
  CHECK(bound_Emain(one, 5).value ==
        doctest::Approx(12 * std::log(5.0) + 17 * std::log(2.0) + 29));
  CHECK(bound_Emain(make_adversarial_params(2, kPi / 6, 0.5), 5).informational);
  CHECK_THROWS_AS(bound_Emain(p, 3), DomainError);

  const auto h = HFunction::table({{0.0, 1.0}, {0.3, 4.0}, {0.5, 1.0}});
  const auto ph = make_adversarial_params(2, kPi / 6, 0, h);
  CHECK(bound_Emain(ph, 5).value - e.value == doctest::Approx(8 * std::log(ph.H)));
}

TEST_CASE("Wendel probabilities") {
  CHECK(wendel_probability(4, 2) == Dyadic{7, 3});
  CHECK(wendel_probability(4, 2).str() == "7/2^3");
  CHECK(wendel_probability(6, 2) == Dyadic{1, 1});
  CHECK(wendel_probability(6, 2).value() == 0.5);
  for (int m = 1; m <= 63; ++m) {
    CHECK(wendel_probability(m + 1, m) == Dyadic{1, 0});
  }
  for (int m = 1; m <= 10; ++m) {
    for (int k = m + 1; k <= 64; ++k) {
      const auto d = wendel_probability(k, m);
      // Cross-multiplied against the Pascal-triangle numerator over 2^{k-1}.
      const unsigned __int128 lhs = static_cast<unsigned __int128>(d.numerator) << (k - 1);
      const unsigned __int128 rhs = static_cast<unsigned __int128>(
                                        oracle::pascal_wendel_numerator(k, m))
                                    << d.log2_denominator;
      CHECK(lhs == rhs);
      CHECK((d.numerator % 2 == 1 || d.log2_denominator == 0));
    }
  }
  CHECK_THROWS_AS(wendel_probability(2, 2), DomainError);
  CHECK_THROWS_AS(wendel_probability(65, 2), DomainError);

  double direct = 0;
  for (int k = 9; k <= 30; ++k) {
    direct += k * static_cast<double>(oracle::pascal_wendel_numerator(k, 2)) / std::ldexp(1.0, k - 1);
  }
  CHECK(wendel_tail_partial_sum(2, 30) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(wendel_tail_partial_sum(2, 8) == 0.0);
}

TEST_CASE("tube and multiplicative bounds") {
  CHECK(tube_volume_bound(2, 0.0625, 0.5) == doctest::Approx(13.0 / 2 * 0.125));
  CHECK_THROWS_AS(tube_volume_bound(2, 0.2, 0.5), ConfigError);
  CHECK(multrva_bound(6, 0.5, 1, 1, 2, 3) == doctest::Approx(std::min(std::sqrt(3.0),
                                                                      std::sqrt(2.0)) /
                                                             std::sqrt(6.0)));
  // Independent Pareto tails with a = xu^c, b = xv^c attain the bound:
  // P{UV >= x} = (xu xv / x)^c (1 + c ln(x / (xu xv))).
  for (double x : {6.0, 10.0, 100.0, 1e5}) {
    const double exact = std::pow(6 / x, 0.5) * (1 + 0.5 * std::log(x / 6));
    CHECK(multrva_bound(x, 0.5, std::sqrt(2.0), std::sqrt(3.0), 2, 3) ==
          doctest::Approx(exact).epsilon(1e-13));
  }
  CHECK(multrva_bound(60, 0.5, 1, 2, 2, 3) ==
        doctest::Approx(0.5 * 2 * std::log(10.0) / std::sqrt(60.0) +
                        std::min(std::sqrt(3.0), 2 * std::sqrt(2.0)) / std::sqrt(60.0)));
}
