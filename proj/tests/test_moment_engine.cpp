#include <doctest.h>

#include <cmath>
#include <random>

#include "chaos/error.hpp"
#include "chaos/moment_engine.hpp"
#include "fixtures.hpp"
#include "quadrature.hpp"

using namespace chaos;
using chaos::testing::all_pairs_n3;
using chaos::testing::random_integer_form;

namespace {

// Direct average of Z^order over all sign vectors, through evaluate().
double brute_moment(const SymmetricMultilinearForm& f, int order) {
  const int n = f.dimension();
  double s = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    s += std::pow(evaluate(f, SignVector::from_mask(n, mask)), order);
  }
  return std::ldexp(s, -n);
}

double quadrature_moment(const SymmetricMultilinearForm& f, const testing::Rule& rule,
                         int order) {
  return testing::tensor_expectation(rule, f.dimension(), [&](const std::vector<double>& x) {
    return std::pow(evaluate_at(f, x), order);
  });
}

bool close(double a, double b, double rel = 1e-9) {
  return std::fabs(a - b) <= rel * std::max(1.0, std::fabs(b));
}

}  // namespace

TEST_CASE("exact Rademacher moments") {
  SymmetricMultilinearForm single(1, 1, {{{1}, 1.0}});
  for (int M = 1; M <= 6; ++M) CHECK(exact_moment_rademacher(single, 2 * M) == 1.0);

  // Z = 2(e1e2 + e1e3 + e2e3) is 6 w.p. 1/4 and -2 w.p. 3/4.
  CHECK(exact_moment_rademacher(all_pairs_n3(), 2) == 12.0);
  CHECK(exact_moment_rademacher(all_pairs_n3(), 4) == 336.0);
  CHECK(exact_moment_rademacher(all_pairs_n3(), 0) == 1.0);
  CHECK(brute_moment(all_pairs_n3(), 4) == 336.0);
}

TEST_CASE("odd moments are zero") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_integer_form(rng, 1 + t % 3, 6);
    CHECK(exact_moment_rademacher(f, 3) == 0.0);
    CHECK(exact_moment_by_expansion(f, gaussian_moments(), 5) == 0.0);
  }
}

TEST_CASE("enumeration budget") {
  SymmetricMultilinearForm big(1, 25, {{{1}, 1.0}});
  CHECK_THROWS_AS(exact_moment_rademacher(big, 2), BudgetExceeded);
  CHECK_THROWS_AS(exact_moment_rademacher(big, 3), BudgetExceeded);
  CHECK_THROWS_AS(exact_tail(big, 1.0), BudgetExceeded);
  CHECK_THROWS_AS(rademacher_max_abs(big), BudgetExceeded);
}

TEST_CASE("Gray-code enumeration equals naive evaluation bit for bit") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 8; ++t) {
    const auto f = random_integer_form(rng, 1 + t % 3, 5 + t);
    const auto values = enumerate_values(f);
    for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
      REQUIRE(values[mask] == evaluate(f, SignVector::from_mask(f.dimension(), mask)));
    }
  }
  // n = 21 makes blocks long enough to pass the resync point.
  SymmetricMultilinearForm wide(2, 21, {{{1, 2}, 3.0}, {{1, 21}, -2.0}, {{5, 13}, 1.0},
                                        {{13, 20}, 2.0}, {{2, 3}, -1.0}});
  const auto values = enumerate_values(wide);
  for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
    REQUIRE(values[mask] == evaluate(wide, SignVector::from_mask(21, mask)));
  }
}

TEST_CASE("enumeration agrees with direct averaging") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 12; ++t) {
    const auto f = random_integer_form(rng, 1 + t % 3, 3 + t % 6);
    for (int M = 1; M <= 3; ++M) {
      CHECK(exact_moment_rademacher(f, 2 * M) == doctest::Approx(brute_moment(f, 2 * M)).epsilon(1e-12));
    }
  }
}

TEST_CASE("expansion moments") {
  SymmetricMultilinearForm single(1, 1, {{{1}, 1.0}});
  double df = 1.0;
  for (int M = 1; M <= 6; ++M) {
    df *= 2 * M - 1;
    CHECK(exact_moment_by_expansion(single, gaussian_moments(), 2 * M) == df);
  }
  SymmetricMultilinearForm pair(2, 2, {{{1, 2}, 1.0}});
  CHECK(exact_moment_by_expansion(pair, gaussian_moments(), 2) == 4.0);
  CHECK(exact_moment_by_expansion(pair, gaussian_moments(), 4) == 144.0);
  CHECK(exact_moment_by_expansion(pair, gaussian_moments(), 0) == 1.0);
}

TEST_CASE("expansion agrees with tensor Gauss quadrature") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 12; ++t) {
    const int k = 1 + t % 3;
    const auto f = random_integer_form(rng, k, k + 1 + t % 3);
    for (int M = 1; M <= 2; ++M) {
      // q nodes integrate degree 2q - 1 exactly; each variable has degree <= 2M.
      const auto gh = testing::gauss_hermite(M + 1);
      const auto gl = testing::gauss_legendre_unit_variance(M + 1);
      CHECK(close(exact_moment_by_expansion(f, gaussian_moments(), 2 * M),
                  quadrature_moment(f, gh, 2 * M)));
      CHECK(close(exact_moment_by_expansion(f, uniform_moments(), 2 * M),
                  quadrature_moment(f, gl, 2 * M)));
    }
  }
}

TEST_CASE("expansion with sign moments equals enumeration") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto f = random_integer_form(rng, 1 + t % 3, 3 + t % 6);
    for (int M = 1; M <= 3; ++M) {
      CHECK(close(exact_moment_by_expansion(f, rademacher_moments(), 2 * M),
                  exact_moment_rademacher(f, 2 * M)));
    }
  }
  // Without the mod-2 shortcut the same number comes out.
  const auto f = random_integer_form(rng, 2, 5);
  MomentSequence ones_without_flag("ones", {1.0, 1.0, 1.0, 1.0});
  ExpansionOptions plain;
  CHECK(close(expectation_of_power(MonomialPolynomial::from_form(f), 4, ones_without_flag, plain),
              exact_moment_rademacher(f, 4)));
}

TEST_CASE("Gaussian comparison dominates the sign moments") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 40; ++t) {
    const auto f = random_integer_form(rng, 1 + t % 3, 3 + t % 6);
    for (int M = 1; M <= 3; ++M) {
      const double rad = exact_moment_rademacher(f, 2 * M);
      const double gauss = exact_moment_by_expansion(f.absolute(), gaussian_moments(), 2 * M);
      CHECK(rad <= gauss * (1 + 1e-12));
    }
  }
}

TEST_CASE("larger moments never decrease the expansion for nonnegative coefficients") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 15; ++t) {
    const auto f = random_integer_form(rng, 1 + t % 3, 3 + t % 5).absolute();
    for (int M = 1; M <= 3; ++M) {
      const double r = exact_moment_by_expansion(f, rademacher_moments(), 2 * M);
      const double u = exact_moment_by_expansion(f, uniform_moments(), 2 * M);
      const double g = exact_moment_by_expansion(f, gaussian_moments(), 2 * M);
      CHECK(r <= u * (1 + 1e-12));
      CHECK(u <= g * (1 + 1e-12));
    }
  }
}

TEST_CASE("expansion errors") {
  const auto f = all_pairs_n3();
  MomentSequence short_seq("short", {1.0, 3.0});
  try {
    exact_moment_by_expansion(f, short_seq, 6);
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("order 6") != std::string::npos);
  }
  ExpansionOptions tiny;
  tiny.term_cap = 2;
  CHECK_THROWS_AS(exact_moment_by_expansion(f, gaussian_moments(), 4, tiny), BudgetExceeded);
}

TEST_CASE("monomial polynomial keeps canonical terms") {
  MonomialPolynomial p(2);
  const int a[] = {1, 0}, b[] = {0, 1};
  p.add_term(a, 1.0);
  p.add_term(b, -1.0);
  const auto sq = p.times(p);  // x^2 - 2xy + y^2
  const auto terms = sq.terms();
  REQUIRE(terms.size() == 3);
  CHECK(terms[0].first == std::vector<int>{0, 2});
  CHECK(terms[1].first == std::vector<int>{1, 1});
  CHECK(terms[1].second == -2.0);
  CHECK(terms[2].first == std::vector<int>{2, 0});

  // (x - y)(x + y) has no xy term.
  MonomialPolynomial q(2);
  q.add_term(a, 1.0);
  q.add_term(b, 1.0);
  CHECK(p.times(q).size() == 2);

  p.add_term(b, 1.0);
  CHECK(p.size() == 1);

  const auto gauss = gaussian_moments();
  CHECK(sq.expectation(gauss) == 2.0);
  // Pruned power matches the materialized one.
  const auto f = MonomialPolynomial::from_form(all_pairs_n3());
  CHECK(expectation_of_power(f, 4, gauss) == f.power(4).expectation(gauss));
}

TEST_CASE("exact tails") {
  const auto f = all_pairs_n3();
  CHECK(exact_tail(f, 1.0) == 1.0);
  CHECK(exact_tail(f, 2.0) == 0.25);
  CHECK(exact_tail(f, 6.0) == 0.0);
  CHECK(exact_tail(f, f.sup_norm_bound()) == 0.0);
  CHECK(rademacher_max_abs(f) == 6.0);

  const double u[] = {0.0, 1.9, 2.0, 5.0};
  const auto t = exact_tails(f, u);
  CHECK(t == std::vector<double>{1.0, 1.0, 0.25, 0.25});
  const auto up = exact_upper_tails(f, u);
  CHECK(up == std::vector<double>{0.25, 0.25, 0.25, 0.25});

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = random_integer_form(rng, 2, 6);
    CHECK(exact_tail(g, g.sup_norm_bound()) == 0.0);
  }
}
