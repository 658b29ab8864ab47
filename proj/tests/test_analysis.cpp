#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "chebquad/analysis.hpp"
#include "chebquad/errors.hpp"

using namespace chebquad;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (auto n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("test functions") {
    const auto f = TestFunction::abs_pow(0.5, 0.6);
    CHECK(f(0.5) == 0.0);
    CHECK(f(-0.5) == doctest::Approx(1.0));
    const auto g = TestFunction::pow_plus(0.2, 1.5);
    CHECK(g(0.1) == 0.0);
    CHECK(g(0.6) == doctest::Approx(std::pow(0.4, 1.5)));
    CHECK(to_string(f) == "abspow:0.5:0.6");
    CHECK(to_string(g) == "powplus:0.2:1.5");
    const auto p = parse_test_function("abspow:0.3:2.82");
    REQUIRE(p);
    CHECK(p->kind == TestKind::AbsPow);
    CHECK(p->c == 0.3);
    CHECK(p->s == 2.82);
    CHECK_FALSE(parse_test_function("abspow:0.3"));
    CHECK_FALSE(parse_test_function("sinc:0:1"));
  }

  TEST_CASE("reference integral of constants") {
    const auto one = TestFunction::make_custom([](double) { return 1.0; }, 1.0, "one");
    CHECK(reference_integral(WeightSpec::jacobi(0, 0), one).value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(reference_integral(WeightSpec::jacobi(-0.5, -0.5), one).value == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(reference_integral(WeightSpec::log_jacobi(0, 0), one).value == doctest::Approx(-2.0).epsilon(1e-14));
  }

  TEST_CASE("reference integral of |x-c|^2 from moments") {
    for (auto w : {WeightSpec::jacobi(-0.6, -0.5), WeightSpec::jacobi(0.5, -0.3), WeightSpec::log_jacobi(-0.3, 0.2),
                   WeightSpec::log_jacobi(0.2, -0.6)}) {
      const auto m = modified_moments(w, 2).values;
      for (double c : {-0.4, 0.3, 0.5}) {
        const double expect = (m[2] + m[0]) / 2 - 2 * c * m[1] + c * c * m[0];
        const auto r = reference_integral(w, TestFunction::abs_pow(c, 2.0));
        CHECK(std::abs(r.value - expect) <= 1e-13 * std::abs(expect));
        CHECK(r.error_estimate <= 1e-13 * std::abs(expect));
      }
    }
  }

  TEST_CASE("reference integral of |x-c|^s without weight") {
    for (double c : {0.3, 0.5, -0.7}) {
      for (double s : {0.4, 0.6, 1.45, 2.82}) {
        const double expect = (std::pow(1 - c, s + 1) + std::pow(1 + c, s + 1)) / (s + 1);
        const auto r = reference_integral(WeightSpec::jacobi(0, 0), TestFunction::abs_pow(c, s));
        CHECK(r.value == doctest::Approx(expect).epsilon(1e-14));
        CHECK(std::abs(r.method_a - r.method_b) <= 1e-12);
      }
    }
    const double xi = 0.2, s = 1.6;
    const auto r = reference_integral(WeightSpec::jacobi(0, 0), TestFunction::pow_plus(xi, s));
    CHECK(r.value == doctest::Approx(std::pow(1 - xi, s + 1) / (s + 1)).epsilon(1e-14));
  }

  TEST_CASE("oracle methods agree on the acceptance integrands") {
    for (auto w : {WeightSpec::jacobi(-0.3, 0.2), WeightSpec::jacobi(-0.6, -0.5), WeightSpec::log_jacobi(-0.3, 0.2),
                   WeightSpec::log_jacobi(-0.6, -0.5)}) {
      for (double s : {0.6, 1.6}) {
        const auto r = reference_integral(w, TestFunction::abs_pow(0.5, s));
        CHECK(std::abs(r.method_a - r.method_b) <= 1e-12 * std::max(1.0, std::abs(r.value)));
      }
    }
  }

  TEST_CASE("fit_slope") {
    std::vector<std::size_t> ns;
    std::vector<double> exact, noisy;
    for (std::size_t n = 10; n <= 1000; n += 7) {
      ns.push_back(n);
      const double d = static_cast<double>(n);
      exact.push_back(3.0 / (d * d));
      noisy.push_back(3.0 / (d * d) * (1 + 0.1 * std::sin(d)));
    }
    const auto e = fit_slope(ns, exact, {10, 1000});
    CHECK(e.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(e.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(std::abs(fit_slope(ns, noisy, {10, 1000}).slope + 2) <= 0.05);
    auto zeros = exact;
    for (std::size_t i = 0; i < zeros.size(); i += 3) zeros[i] = 0.0;
    const auto z = fit_slope(ns, zeros, {10, 1000});
    CHECK(z.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(z.count == exact.size() - (exact.size() + 2) / 3);
    CHECK_THROWS_AS(fit_slope(ns, exact, {10, 30}), std::invalid_argument);
    CHECK_THROWS_AS(fit_slope({1, 2}, {1.0}, {1, 2}), std::invalid_argument);
  }

  TEST_CASE("theoretical rates") {
    const auto cc = Family::ClenshawCurtis;
    CHECK(theoretical_rate(cc, WeightSpec::jacobi(-0.3, 0.2), 0.6).slope == doctest::Approx(-1.6));
    CHECK(theoretical_rate(Family::Fejer1, WeightSpec::jacobi(-0.6, -0.5), 1.6).slope == doctest::Approx(-2.4));
    CHECK(theoretical_rate(cc, WeightSpec::jacobi(-0.5, -0.5), 1.0).slope == doctest::Approx(-2.0));
    const auto lj = theoretical_rate(cc, WeightSpec::log_jacobi(-0.6, -0.5), 0.6);
    CHECK(lj.slope == doctest::Approx(-1.6));
    CHECK(lj.log_factor);
    const auto lk = theoretical_rate(cc, WeightSpec::log_jacobi(-0.6, -0.7), 0.6);
    CHECK(lk.slope == doctest::Approx(-1.2));
    CHECK_FALSE(theoretical_rate(cc, WeightSpec::log_jacobi(-0.6, 0.2), 0.6).log_factor);
    const auto g = Family::GaussLegendre;
    const auto legendre = WeightSpec::jacobi(0, 0);
    CHECK(theoretical_rate(g, legendre, 0.4).slope == doctest::Approx(-0.8));
    CHECK(theoretical_rate(g, legendre, 0.4).one_sided);
    CHECK(theoretical_rate(g, legendre, 1.0).log_factor);
    CHECK(theoretical_rate(g, legendre, 2.82).slope == doctest::Approx(-3.82));
    CHECK_FALSE(theoretical_rate(g, legendre, 2.82).one_sided);
    CHECK_THROWS_AS(theoretical_rate(g, WeightSpec::jacobi(0.1, 0), 1.0), std::invalid_argument);
  }

  TEST_CASE("convergence study reproduces predicted slopes") {
    const auto ns = geometric_grid(100, 1000, 40);
    const auto cc = convergence_study(Family::ClenshawCurtis, WeightSpec::jacobi(-0.3, 0.2),
                                      TestFunction::abs_pow(0.5, 0.6), range(100, 400));
    CHECK(cc.theoretical_slope == doctest::Approx(-1.6));
    CHECK(cc.pass);
    const auto gl = convergence_study(Family::GaussLegendre, WeightSpec::jacobi(0, 0),
                                      TestFunction::abs_pow(0.3, 2.82), ns);
    CHECK(gl.fitted_slope == doctest::Approx(-3.82).epsilon(0.2 / 3.82));
    CHECK(gl.pass);
    CHECK(gl.fit_window == std::pair<std::size_t, std::size_t>{100, 1000});
    for (std::size_t i = 0; i < gl.ns.size(); ++i) {
      if (!gl.used_in_fit[i]) CHECK(gl.abs_errors[i] < 1e3 * gl.reference_error);
    }
  }

  TEST_CASE("convergence study is deterministic") {
    const auto run = [] {
      return convergence_study(Family::Fejer2, WeightSpec::log_jacobi(-0.3, 0.2), TestFunction::abs_pow(0.5, 1.6),
                               geometric_grid(20, 300, 12), {std::pair<std::size_t, std::size_t>{20, 300}});
    };
    const auto a = run();
    const auto b = run();
    CHECK(a.abs_errors == b.abs_errors);
    CHECK(a.fitted_slope == b.fitted_slope);
  }

  TEST_CASE("convergence study preconditions") {
    const auto w = WeightSpec::jacobi(0, 0);
    const auto f = TestFunction::abs_pow(0.5, 0.6);
    CHECK_THROWS_AS(convergence_study(Family::Fejer1, w, f, {10, 5, 20}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(Family::Fejer1, w, f, {1, 5, 20}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(Family::Fejer1, w, f, {10, 6000}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(Family::GaussLegendre, WeightSpec::jacobi(0.2, 0), f, {10, 20}),
                    std::invalid_argument);
    // polynomial integrands leave nothing above the noise floor
    CHECK_THROWS_AS(
        convergence_study(Family::Fejer1, w, TestFunction::abs_pow(0.5, 2.0), range(100, 120)), NumericalFailure);
  }

  TEST_CASE("weight sum study") {
    for (const auto& row : weight_sum_study(Family::GaussLegendre, WeightSpec::jacobi(0, 0), {5, 17, 100})) {
      CHECK(row.deviation <= 1e-13);
    }
    const auto cc = weight_sum_study(Family::ClenshawCurtis, WeightSpec::log_jacobi(0, 0), {200});
    CHECK(std::abs(cc[0].abs_sum - 2) <= 1e-4 * 2);
  }

  TEST_CASE("moment decay fits") {
    for (auto [a, b] : {std::pair{-0.3, 0.2}, {0.5, -0.6}, {-0.5, 0.2}, {0.0, 0.0}}) {
      const auto d = moment_decay_fit(WeightSpec::jacobi(a, b), 32, 4096);
      CHECK(d.theoretical == doctest::Approx(-2 - 2 * minbar(a, b)));
      CHECK(std::abs(d.fit.slope - d.theoretical) <= 0.25);
    }
    const auto g = moment_decay_fit(WeightSpec::log_jacobi(0.2, -0.3), 32, 4096);
    CHECK(g.log_divided);
    CHECK(std::abs(g.fit.slope - g.theoretical) <= 0.3);
    CHECK(moments_vanish_eventually(WeightSpec::jacobi(-0.5, 0.5)));
    CHECK_FALSE(moments_vanish_eventually(WeightSpec::jacobi(-0.5, 0.2)));
    CHECK_THROWS_AS(moment_decay_fit(WeightSpec::jacobi(0.5, 0.5), 32, 64), std::invalid_argument);
  }

  TEST_CASE("gauss-jacobi rules") {
    const auto gl = gauss_legendre(7);
    const auto gj = gauss_jacobi(7, 0, 0);
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(gj.nodes[i] == doctest::Approx(gl.nodes[i]).epsilon(1e-14));
      CHECK(gj.weights[i] == doctest::Approx(gl.weights[i]).epsilon(1e-13));
    }
    for (auto [a, b] : {std::pair{-0.6, -0.5}, {0.5, -0.3}}) {
      const std::size_t n = 12;
      const auto r = gauss_jacobi(n, a, b);
      const auto m = jacobi_moments(a, b, 2 * n).values;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        CHECK(std::abs(m[j] - apply(r, [j](double x) { return chebyshev_T(j, x); })) <= 1e-12 * std::max(1.0, m[0]));
      }
    }
  }

  TEST_CASE("open problem report") {
    const auto rep = gauss_open_problem(WeightSpec::jacobi(-0.3, 0.2), TestFunction::abs_pow(0.5, 0.6),
                                        geometric_grid(20, 200, 10), {std::pair<std::size_t, std::size_t>{20, 200}});
    CHECK(rep.cc_errors.size() == rep.ns.size());
    CHECK(rep.gauss_jacobi_errors.size() == rep.ns.size());
    CHECK(rep.gauss_legendre_wf_errors.size() == rep.ns.size());
    CHECK(rep.reference_slope == doctest::Approx(-1.6));
    REQUIRE(rep.cc_fit);
    REQUIRE(rep.gauss_jacobi_fit);
    CHECK(rep.gauss_jacobi_fit->slope < -1.0);
  }

  TEST_CASE("geometric grid") {
    const auto g = geometric_grid(10, 1000, 3);
    CHECK(g == std::vector<std::size_t>{10, 100, 1000});
    const auto d = geometric_grid(2, 5, 20);
    CHECK(d == std::vector<std::size_t>{2, 3, 4, 5});
    CHECK_THROWS_AS(geometric_grid(0, 10, 3), std::invalid_argument);
  }
}
