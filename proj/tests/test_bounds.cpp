#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chaos/bounds.hpp"
#include "chaos/error.hpp"

using namespace chaos;

namespace {

// Independent route to log((2m-1)!!) = log((2m)!) - m log 2 - log(m!).
double lgamma_log_double_factorial(int m_odd) {
  const int m = (m_odd + 1) / 2;
  return std::lgamma(2.0 * m + 1.0) - m * std::log(2.0) - std::lgamma(m + 1.0);
}

}  // namespace

TEST_CASE("double factorial") {
  CHECK(double_factorial_odd(1) == 1);
  CHECK(double_factorial_odd(3) == 3);
  CHECK(double_factorial_odd(7) == 105);
  CHECK(double_factorial_odd(33) == 6332659870762850625ULL);
  CHECK_THROWS_AS(double_factorial_odd(35), Overflow);
  CHECK_THROWS_AS(double_factorial_odd(4), InvalidInput);
  CHECK_THROWS_AS(double_factorial_odd(0), InvalidInput);
  CHECK_THROWS_AS(double_factorial_odd(-3), InvalidInput);
  for (int m = 1; m <= 399; m += 2) {
    CHECK(log_double_factorial_odd(m) ==
          doctest::Approx(lgamma_log_double_factorial(m)).epsilon(1e-12));
  }
}

TEST_CASE("Hoeffding bound") {
  CHECK(hoeffding_tail_bound(3.0, 9.0) == doctest::Approx(std::exp(-0.5)));
  CHECK(hoeffding_tail_bound(1e-9, 1.0) == doctest::Approx(1.0));
  CHECK(hoeffding_tail_bound(2.0, 1.0) == doctest::Approx(0.1353352832366127));
  CHECK_THROWS_AS(hoeffding_tail_bound(1.0, 0.0), InvalidInput);
}

TEST_CASE("double-factorial moment bound") {
  CHECK(theorem2_moment_bound(1, 1, 1.0).value == 1.0);
  CHECK(theorem2_moment_bound(2, 1, 2.0).value == 6.0);
  CHECK(theorem2_moment_bound(2, 2, 6.0).value == 3780.0);
  CHECK(theorem2_moment_bound(3, 2, 0.0).value == 0.0);
  CHECK_FALSE(theorem2_moment_bound(2, 2, 6.0).log_scale);

  // 399!! is far beyond double range.
  const auto huge = theorem2_moment_bound(4, 50, 1.0);
  CHECK(huge.log_scale);
  CHECK(std::isinf(huge.value));
  CHECK(huge.log_value == doctest::Approx(lgamma_log_double_factorial(399)).epsilon(1e-12));
  CHECK(dominates_with_tolerance(huge, 1e300));

  // Past 64 bits but still a finite double.
  const auto mid = theorem2_moment_bound(3, 6, 2.0);
  CHECK_FALSE(mid.log_scale);
  CHECK(std::log(mid.value) ==
        doctest::Approx(lgamma_log_double_factorial(35) + 6 * std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(theorem2_moment_bound(0, 1, 1.0), InvalidInput);
  CHECK_THROWS_AS(theorem2_moment_bound(1, 0, 1.0), InvalidInput);
}

TEST_CASE("tail constant") {
  CHECK(tail_constant_A(1) == doctest::Approx(7.6885).epsilon(1e-4));
  CHECK(tail_constant_A(2) == doctest::Approx(20.900).epsilon(1e-4));
  CHECK(tail_constant_A(3) == doctest::Approx(56.81).epsilon(1e-4));
  CHECK_THROWS_AS(tail_constant_A(0), InvalidInput);
}

TEST_CASE("tail constant covers the Markov chain at every level") {
  // Replays the moment-method argument with log-gamma arithmetic: with
  // M = floor((u/V)^{2/k} / (2k)), Markov's inequality applied to E Z^{2M}
  // must sit below A(k) exp(-(u/V)^{2/k} / 2) whenever M >= 1, and the
  // right side must be >= 1 whenever M = 0.
  for (int k = 1; k <= 5; ++k) {
    const double logA = std::log(tail_constant_A(k));
    for (double t = 0.0; t <= 400.0; t += 0.05) {  // t = u / V
      const double s = std::pow(t, 2.0 / k);
      const long M = static_cast<long>(std::floor(s / (2.0 * k)));
      const double log_rhs = logA - 0.5 * s;
      if (M == 0) {
        CHECK(log_rhs >= 0.0);
        continue;
      }
      const double log_markov =
          lgamma_log_double_factorial(static_cast<int>(2 * k * M - 1)) - 2.0 * M * std::log(t);
      CHECK(log_markov <= log_rhs);
    }
  }
}

TEST_CASE("multivariate tail bound") {
  for (int k = 1; k <= 4; ++k) CHECK(theorem1_tail_bound(0.0, k, 2.5) == 1.0);
  CHECK(theorem1_tail_bound(std::sqrt(3.0), 1, 3.0, 1.0) == doctest::Approx(std::exp(-0.5)));
  CHECK(theorem1_tail_bound(100.0, 2, 1.0) ==
        doctest::Approx(tail_constant_A(2) * std::exp(-50.0)).epsilon(1e-12));
  CHECK(theorem1_tail_bound(1e6, 3, 1.0) < 1e-40);
  CHECK_THROWS_AS(theorem1_tail_bound(1.0, 2, 0.0), InvalidInput);
  CHECK_THROWS_AS(theorem1_tail_bound(-1.0, 2, 1.0), InvalidInput);
  CHECK_THROWS_AS(theorem1_tail_bound(1.0, 2, 1.0, -1.0), InvalidInput);
}

TEST_CASE("k = 1 exponents coincide") {
  for (double v2 : {0.3, 1.0, 2.0, 17.5}) {
    for (double u = 0.0; u <= 20.0; u += 0.37) {
      CHECK(theorem1_exponent(u, 1, v2) == hoeffding_exponent(u, v2));
    }
  }
}

TEST_CASE("Borell moment bound") {
  for (int k = 1; k <= 5; ++k) {
    double kf = std::tgamma(k + 1.0);
    CHECK(borell_moment_bound(k, 1.0, 2.0).value == doctest::Approx(kf * 2.0));
  }
  // (2p-1)^{kp} (k! v2)^p by direct substitution.
  CHECK(borell_moment_bound(1, 2.0, 1.0).value == doctest::Approx(9.0));
  CHECK(borell_moment_bound(2, 2.0, 1.0).value == doctest::Approx(324.0));
  CHECK(borell_moment_bound(2, 1.5, 2.0).value ==
        doctest::Approx(std::pow(2.0, 3.0) * std::pow(4.0, 1.5)));
  CHECK(borell_moment_bound(4, 60.0, 1.0).log_scale);
  CHECK_THROWS_AS(borell_moment_bound(2, 0.5, 1.0), InvalidInput);
}

TEST_CASE("double-factorial bound vs Borell") {
  auto c = compare_theorem2_vs_borell(1, 1, 1.0);
  CHECK(c.log_theorem2 == 0.0);
  CHECK(c.log_borell == 0.0);
  CHECK(c.log_ratio == 0.0);

  c = compare_theorem2_vs_borell(2, 20, 1.0);
  CHECK(c.log_theorem2 == doctest::Approx(lgamma_log_double_factorial(79)).epsilon(1e-12));
  CHECK(c.log_borell == doctest::Approx(40 * std::log(39.0) + 20 * std::log(2.0)).epsilon(1e-12));
  CHECK(c.log_theorem2 == doctest::Approx(135.6).epsilon(0.5 / 135.6));
  CHECK(c.log_borell == doctest::Approx(160.4).epsilon(0.5 / 160.4));
  CHECK(c.log_ratio < 0.0);

  c = compare_theorem2_vs_borell(2, 1, 1.0);
  CHECK(c.log_theorem2 == doctest::Approx(std::log(3.0)));
  CHECK(c.log_borell == doctest::Approx(std::log(2.0)));
  CHECK(c.log_ratio > 0.0);

  // v2 cancels in the ratio.
  CHECK(compare_theorem2_vs_borell(3, 7, 4.0).log_ratio ==
        doctest::Approx(compare_theorem2_vs_borell(3, 7, 1.0).log_ratio));
}

TEST_CASE("double-factorial bound is eventually sharper for every k") {
  for (int k = 1; k <= 4; ++k) {
    int last_nonnegative = 0;
    for (int M = 1; M <= 60; ++M) {
      if (compare_theorem2_vs_borell(k, M, 1.0).log_ratio >= 0.0) last_nonnegative = M;
    }
    CHECK(last_nonnegative + 1 <= 50);
  }
}

TEST_CASE("Stirling step") {
  const auto s = stirling_step_check(200);
  CHECK(s.holds);
  CHECK(s.monotone);
  CHECK(s.first_failure == 0);
  REQUIRE(s.ratios.size() == 200);
  CHECK(s.ratios.front() == doctest::Approx(std::numbers::e / (2.0 * std::numbers::sqrt2)));
  CHECK(s.ratios.back() < 1.0);
  CHECK(s.ratios.back() > 0.999);
  for (int n = 1; n <= 200; ++n) {
    const double lhs = lgamma_log_double_factorial(2 * n - 1);
    const double rhs = 0.5 * std::log(2.0) + n * std::log(2.0 * n / std::numbers::e);
    CHECK(lhs <= rhs);
  }
}

TEST_CASE("domination tolerance") {
  CHECK(dominates_with_tolerance(1.0, 1.0));
  CHECK(dominates_with_tolerance(1.0 - 5e-10, 1.0));
  CHECK_FALSE(dominates_with_tolerance(1.0 - 2e-9, 1.0));
  CHECK(dominates_with_tolerance(1e6 * (1 - 5e-10), 1e6));
  const auto r = make_report("x", 2.0, ScaledValue::from_linear(3.0), 4.0, std::string("o"));
  REQUIRE(r.dominates.has_value());
  CHECK_FALSE(*r.dominates);
  CHECK_FALSE(make_report("x", 2.0, ScaledValue::from_linear(3.0)).dominates.has_value());
}
