#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "chebquad/moments.hpp"
#include "oracle.hpp"

using namespace chebquad;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGrid[] = {-0.6, -0.5, -0.3, 0.0, 0.2, 0.5, 1.0};

void check_against_oracle(const WeightSpec& w, std::size_t K) {
  const auto t = modified_moments(w, K);
  for (std::size_t k = 0; k <= K; ++k) {
    const auto o = oracle::moment(w, k);
    const double ref = static_cast<double>(o.value());
    CAPTURE(to_string(w));
    CAPTURE(k);
    REQUIRE(o.spread() <= 1e-13L * std::max(1.0L, std::abs(o.value())));
    if (std::abs(ref) < 1e-6) {
      CHECK(std::abs(t.values[k] - ref) <= 1e-12);
    } else {
      CHECK(std::abs(t.values[k] - ref) <= 1e-9 * std::abs(ref));
    }
  }
}

}  // namespace

TEST_SUITE("moments") {
  TEST_CASE("legendre moments") {
    const auto t = jacobi_moments(0, 0, 4);
    const double expect[] = {2, 0, -2.0 / 3, 0, -2.0 / 15};
    for (int k = 0; k <= 4; ++k) CHECK(std::abs(t.values[k] - expect[k]) <= 1e-15);
  }

  TEST_CASE("chebyshev weight moments vanish") {
    const auto t = jacobi_moments(-0.5, -0.5, 3);
    CHECK(t.values[0] == doctest::Approx(kPi).epsilon(1e-15));
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(t.values[k]) <= 1e-15);
  }

  TEST_CASE("log moment G_0 of the plain log weight") {
    CHECK(log_jacobi_moments(0, 0, 0).values[0] == doctest::Approx(-2.0).epsilon(1e-15));
  }

  TEST_CASE("spot values against the dual oracle") {
    check_against_oracle(WeightSpec::jacobi(0.2, -0.3), 10);
    check_against_oracle(WeightSpec::log_jacobi(0, 0), 6);
    check_against_oracle(WeightSpec::jacobi(0.5, -0.5), 12);
    check_against_oracle(WeightSpec::log_jacobi(-0.6, 0.5), 12);
  }

  TEST_CASE("oracle equivalence on the full parameter grid") {
    for (double a : kGrid) {
      for (double b : kGrid) {
        check_against_oracle(WeightSpec::jacobi(a, b), 40);
        check_against_oracle(WeightSpec::log_jacobi(a, b), 40);
      }
    }
  }

  TEST_CASE("unstable pairs route to the banded solve") {
    CHECK(needs_banded_solve(0.5, -0.5));
    CHECK(needs_banded_solve(-0.5, 0.5));
    CHECK(needs_banded_solve(1.0, 0.52));
    CHECK_FALSE(needs_banded_solve(-0.3, 0.2));
    CHECK_FALSE(needs_banded_solve(-0.6, -0.5));
    CHECK(jacobi_moments(0.5, -0.5, 20).method == MomentMethod::BandedSolve);
    CHECK(jacobi_moments(0.2, -0.3, 20).method == MomentMethod::Forward);
  }

  TEST_CASE("recurrence residuals") {
    for (double a : kGrid) {
      for (double b : kGrid) {
        const std::size_t K = 200;
        const auto M = jacobi_moments(a, b, K + 1).values;
        const auto G = log_jacobi_moments(a, b, K).values;
        for (std::size_t k = 1; k + 1 <= K; ++k) {
          const double kk = static_cast<double>(k);
          const double floor_m = std::pow(kk, -2 - 2 * std::min(a, b));
          const double rm = (a + b + kk + 2) * M[k + 1] + 2 * (a - b) * M[k] + (a + b - kk + 2) * M[k - 1];
          const double sm = std::max({std::abs(M[k - 1]), std::abs(M[k]), std::abs(M[k + 1]), floor_m});
          CHECK(std::abs(rm) <= 1e-10 * sm);
          const double rhs = 2 * M[k] - M[k - 1] - M[k + 1];
          const double rg = (a + b + kk + 2) * G[k + 1] + 2 * (a - b) * G[k] + (a + b - kk + 2) * G[k - 1] - rhs;
          const double sg = std::max({std::abs(G[k - 1]), std::abs(G[k]), std::abs(G[k + 1]), std::abs(rhs),
                                      floor_m * std::log(2 * kk)});
          CHECK(std::abs(rg) <= 1e-10 * sg);
        }
      }
    }
  }

  TEST_CASE("reflection symmetry") {
    for (double a : kGrid) {
      for (double b : kGrid) {
        const auto p = jacobi_moments(a, b, 60).values;
        const auto q = jacobi_moments(b, a, 60).values;
        for (std::size_t k = 0; k <= 60; ++k) {
          const double s = k % 2 ? -1.0 : 1.0;
          CHECK(std::abs(p[k] - s * q[k]) <= 1e-12 * std::max(std::abs(p[k]), 1e-12 * std::abs(p[0])));
        }
      }
    }
  }

  TEST_CASE("equal parameters give zero odd moments") {
    for (double a : kGrid) {
      const auto t = jacobi_moments(a, a, 101).values;
      for (std::size_t k = 1; k <= 101; k += 2) CHECK(std::abs(t[k]) <= 1e-13 * std::abs(t[0]));
    }
  }

  TEST_CASE("asymptotic formula") {
    for (std::size_t k : {2u, 5u, 100u}) CHECK(moment_asymptotic(WeightSpec::jacobi(-0.5, -0.5), k) == 0.0);
    const auto t = jacobi_moments(0.2, -0.3, 200);
    const double ratio = moment_asymptotic(WeightSpec::jacobi(0.2, -0.3), 200) / t.values[200];
    CHECK(ratio >= 0.9);
    CHECK(ratio <= 1.1);
    const auto g = log_jacobi_moments(0, 0, 201).values;
    for (std::size_t k : {200u, 201u}) {
      const double ga = moment_asymptotic(WeightSpec::log_jacobi(0, 0), k);
      CHECK((g[k] > 0) == (k % 2 == 0));
      CHECK(ga / g[k] == doctest::Approx(1.0).epsilon(0.05));
      const double kk = static_cast<double>(k);
      const double scaled = std::abs(g[k]) * kk * kk / std::log(2 * kk);
      CHECK(scaled > 0.2);
      CHECK(scaled < 2.0);
    }
  }

  TEST_CASE("asymptotic series agrees with large-k moments") {
    for (auto w : {WeightSpec::jacobi(0.2, -0.3), WeightSpec::jacobi(-0.6, 0.5), WeightSpec::log_jacobi(-0.3, 0.2)}) {
      const auto t = modified_moments(w, 400);
      for (std::size_t k : {150u, 151u, 400u}) {
        const auto s = moment_asymptotic_series(w, static_cast<double>(k));
        CHECK(std::abs(s.value - t.values[k]) <= 1e-9 * std::abs(t.values[k]) + 2 * s.error_estimate);
      }
    }
  }

  TEST_CASE("log moment decay for (-0.3, 0.2)") {
    const auto g = log_jacobi_moments(-0.3, 0.2, 50).values;
    // |G_k| ~ c k^{-2.4} ln k: rescaled values level off
    const double r1 = std::abs(g[30]) * std::pow(30.0, 2.4) / std::log(60.0);
    const double r2 = std::abs(g[50]) * std::pow(50.0, 2.4) / std::log(100.0);
    CHECK(r2 / r1 == doctest::Approx(1.0).epsilon(0.1));
  }

  TEST_CASE("labels and parsing") {
    CHECK(to_string(WeightSpec::jacobi(-0.3, 0.2)) == "jacobi:-0.3:0.2");
    CHECK(to_string(WeightSpec::log_jacobi(0, 0.5)) == "logjacobi:0:0.5");
    const auto w = parse_weight("logjacobi:-0.6:+0.5");
    REQUIRE(w);
    CHECK(*w == WeightSpec::log_jacobi(-0.6, 0.5));
    CHECK_FALSE(parse_weight("jacobi:1"));
    CHECK_FALSE(parse_weight("laguerre:0:0"));
    CHECK_FALSE(parse_weight("jacobi:x:0"));
    CHECK_THROWS_AS(validate(WeightSpec::jacobi(-1.0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_moments(0, -1.2, 4), std::invalid_argument);
  }
}
