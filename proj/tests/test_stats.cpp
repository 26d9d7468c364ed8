#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mpsfft/stats.hpp"
#include "oracles.hpp"

using namespace mpsfft;

TEST_CASE("exact eta/gamma") {
  using Obs = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
  const Obs all_reaching = {{3, 3}, {12, 12}, {8, 8}};
  auto r = exact_eta_gamma(all_reaching);
  CHECK(r.eta == 1.0);
  CHECK(r.gamma == 0.0);

  const Obs mixed = {{8, 8}, {9, 8}};
  r = exact_eta_gamma(mixed);
  CHECK(r.eta == 0.5);
  CHECK(r.gamma == doctest::Approx(0.125));

  CHECK_THROWS_AS(exact_eta_gamma(Obs{}), std::invalid_argument);
}

TEST_CASE("regularized incomplete beta basics") {
  CHECK(regularized_incomplete_beta(0.5, 1, 1) == doctest::Approx(0.5));
  CHECK(regularized_incomplete_beta(0.0, 3, 5) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, 3, 5) == 1.0);
  CHECK(regularized_incomplete_beta(0.3, 2, 3) ==
        doctest::Approx(oracles::beta_cdf_by_quadrature(0.3, 2, 3))
            .epsilon(1e-6));
  CHECK(regularized_incomplete_beta(0.3, 2, 3) ==
        doctest::Approx(0.3483).epsilon(1e-3));
  CHECK_THROWS_AS(regularized_incomplete_beta(-0.1, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("beta function symmetry and monotonicity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t a = 1 + rng() % 200;
    const std::uint64_t b = 1 + rng() % 200;
    const double x = double(rng() % 999 + 1) / 1000.0;
    const double lhs = regularized_incomplete_beta(x, a, b);
    const double rhs = regularized_incomplete_beta(1.0 - x, b, a);
    CHECK(std::abs(lhs + rhs - 1.0) <= 1e-10);
  }
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double x = double(i) / 20.0;
    const double v = regularized_incomplete_beta(x, 7, 4);
    CHECK(v >= prev);
    prev = v;
  }
  // Larger argument sizes against quadrature.
  CHECK(regularized_incomplete_beta(0.62, 600, 400) ==
        doctest::Approx(oracles::beta_cdf_by_quadrature(0.62, 600, 400))
            .epsilon(1e-6));
}

TEST_CASE("posterior lower bound closed form when all runs reach") {
  CHECK(eta_lower_bound(100, 100, 0.95) ==
        doctest::Approx(std::pow(0.05, 1.0 / 101.0)).epsilon(1e-12));
  // Frozen high-precision value of 0.05^(1/2598062).
  CHECK(eta_lower_bound(2598061, 2598061, 0.95) ==
        doctest::Approx(0.999998846936468).epsilon(1e-12));
  CHECK(eta_lower_bound(0, 0, 0.95) == doctest::Approx(0.05));
  CHECK_THROWS_AS(eta_lower_bound(5, 6, 0.95), std::invalid_argument);
  CHECK_THROWS_AS(eta_lower_bound(5, 5, 1.5), std::invalid_argument);
}

TEST_CASE("posterior lower bound by bisection re-substitutes") {
  for (const auto& [xi0, xi1, alpha] :
       std::vector<std::tuple<std::uint64_t, std::uint64_t, double>>{
           {100, 95, 0.9}, {1000, 998, 0.95}, {50, 20, 0.8},
           {2598061, 2598059, 0.95}}) {
    const double lower = eta_lower_bound(xi0, xi1, alpha);
    const double back =
        regularized_incomplete_beta(lower, xi1 + 1, xi0 - xi1 + 1);
    CHECK(std::abs(back - (1.0 - alpha)) <= 1e-9);
  }
}

TEST_CASE("posterior lower bound is monotone in successes and confidence") {
  const double base = eta_lower_bound(100, 90, 0.95);
  CHECK(eta_lower_bound(100, 95, 0.95) > base);
  CHECK(eta_lower_bound(100, 90, 0.99) < base);
}

TEST_CASE("normal quantile") {
  CHECK(critical_z(0.95) == doctest::Approx(1.959964).epsilon(1e-5));
  for (const double p : {0.005, 0.1, 0.5, 0.9, 0.975, 0.9999}) {
    CHECK(normal_quantile(p) ==
          doctest::Approx(oracles::normal_quantile_by_bisection(p))
              .epsilon(1e-9));
  }
}

TEST_CASE("gamma confidence interval") {
  SUBCASE("identical gaps give a zero-width interval") {
    const std::vector<double> gaps = {0.2, 0.2, 0.2};
    const ConfidenceInterval ci = gamma_interval(gaps, 0.95);
    CHECK_FALSE(ci.degenerate);
    CHECK(ci.low == doctest::Approx(0.2));
    CHECK(ci.high == doctest::Approx(0.2));
  }
  SUBCASE("two-point arithmetic") {
    const std::vector<double> gaps = {0.1, 0.3};
    const ConfidenceInterval ci = gamma_interval(gaps, 0.95);
    const double sd = std::sqrt(((0.1 - 0.2) * (0.1 - 0.2) +
                                 (0.3 - 0.2) * (0.3 - 0.2)) /
                                1.0);
    const double half = 1.959963985 * sd / std::sqrt(2.0);
    CHECK(ci.low == doctest::Approx(0.2 - half).epsilon(1e-6));
    CHECK(ci.high == doctest::Approx(0.2 + half).epsilon(1e-6));
  }
  SUBCASE("fewer than two observations is degenerate") {
    CHECK(gamma_interval(std::vector<double>{}, 0.95).degenerate);
    const ConfidenceInterval one =
        gamma_interval(std::vector<double>{0.4}, 0.95);
    CHECK(one.degenerate);
    CHECK(one.low == 0.4);
  }
}
