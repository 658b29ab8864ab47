#include "chebquad/rules.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "chebquad/errors.hpp"
#include "chebquad/special.hpp"
#include "chebquad/summation.hpp"

namespace chebquad {

using special::kPi;

QuadratureRule build_weighted_rule(Family family, std::size_t n, const WeightSpec& weight) {
  if (n < 2) throw std::invalid_argument("build_weighted_rule: n must be >= 2");
  const auto table = modified_moments(weight, n - 1);
  return build_weighted_rule(family, n, weight, table.values);
}

QuadratureRule build_weighted_rule(Family family, std::size_t n, const WeightSpec& weight,
                                   std::span<const double> moments) {
  if (!is_chebyshev_family(family)) {
    throw std::invalid_argument("build_weighted_rule: family must be fejer1, fejer2 or clenshaw-curtis");
  }
  if (n < 2) throw std::invalid_argument("build_weighted_rule: n must be >= 2");
  if (moments.size() < n) throw std::invalid_argument("build_weighted_rule: need n moments");
  validate(weight);
  QuadratureRule rule;
  rule.family = family;
  rule.n = n;
  rule.weight = weight;
  rule.nodes = make_points(family, n).points;
  rule.weights = interp_transpose(family, moments.first(n));
  return rule;
}

namespace {

struct LegendreEval {
  double p = 0.0;   // P_n(x)
  double dp = 0.0;  // P_n'(x)
};

LegendreEval legendre(std::size_t n, double x) {
  double p0 = 1.0, p1 = x;
  for (std::size_t j = 2; j <= n; ++j) {
    const auto dj = static_cast<double>(j);
    const double p2 = ((2.0 * dj - 1.0) * x * p1 - (dj - 1.0) * p0) / dj;
    p0 = p1;
    p1 = p2;
  }
  const auto dn = static_cast<double>(n);
  // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
  const double dp = dn * (x * p1 - p0) / ((x - 1.0) * (x + 1.0));
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.family = Family::GaussLegendre;
  rule.n = n;
  rule.weight = WeightSpec::jacobi(0.0, 0.0);
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const auto dn = static_cast<double>(n);
  const double q = 2.0 * dn + 1.0;
  const std::size_t half = (n + 1) / 2;
  for (std::size_t k = 1; k <= half; ++k) {
    double x = 0.0;
    if (!(n % 2 == 1 && k == half)) {
      const double phi = (4.0 * static_cast<double>(k) - 1.0) * kPi / (4.0 * dn + 2.0);
      x = -std::cos(phi + 1.0 / (std::tan(phi) * 2.0 * q * q));
      int it = 0;
      for (;; ++it) {
        if (it == 20) {
          throw NumericalFailure("gauss_legendre: Newton did not converge for n = " + std::to_string(n) +
                                 ", k = " + std::to_string(k));
        }
        const auto e = legendre(n, x);
        const double dx = e.p / e.dp;
        x -= dx;
        if (std::abs(dx) <= 1e-16) break;
        if (std::abs(dx) <= 1e-15 * std::abs(x)) {
          // one more step from an already converged iterate
          const auto e2 = legendre(n, x);
          x -= e2.p / e2.dp;
          break;
        }
      }
    }
    const auto e = legendre(n, x);
    const double w = 2.0 / ((1.0 - x) * (1.0 + x) * e.dp * e.dp);
    rule.nodes[k - 1] = x;
    rule.weights[k - 1] = w;
    rule.nodes[n - k] = x == 0.0 ? 0.0 : -x;
    rule.weights[n - k] = w;
  }
  return rule;
}

double apply(const QuadratureRule& rule, const std::function<double(double)>& f) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v)) {
      throw std::domain_error("apply: integrand is not finite at node x = " + std::to_string(rule.nodes[i]));
    }
    sum.add(rule.weights[i] * v);
  }
  return sum.value();
}

double weight_abs_sum(const QuadratureRule& rule) {
  CompensatedSum sum;
  for (double w : rule.weights) sum.add(std::abs(w));
  return sum.value();
}

}  // namespace chebquad
