#include "chebquad/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chebquad::special {

namespace {

[[noreturn]] void domain_failure(const char* fn, double x) {
  throw std::domain_error(std::string(fn) + ": argument " + std::to_string(x) +
                          " outside the domain");
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Asymptotic series of Psi for x >= 10; the first omitted term is below 1e-17.
double digamma_asymptotic(double x) {
  const double inv2 = 1.0 / (x * x);
  // B_{2k} / (2k), k = 1..7
  constexpr double c[] = {1.0 / 12.0,   -1.0 / 120.0, 1.0 / 252.0,  -1.0 / 240.0,
                          1.0 / 132.0,  -691.0 / 32760.0, 1.0 / 12.0};
  double series = 0.0;
  for (int k = 6; k >= 0; --k) series = (series + c[k]) * inv2;
  return std::log(x) - 0.5 / x - series;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) domain_failure("log_gamma", x);
  return std::lgamma(x);
}

double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) domain_failure("gamma", x);
  return std::tgamma(x);
}

double digamma(double x) {
  if (!std::isfinite(x) || is_nonpositive_integer(x)) domain_failure("digamma", x);
  if (x < 0.5) {
    // Psi(x) = Psi(1 - x) - pi cot(pi x); reduce mod 2 exactly first
    const double r = x - 2.0 * std::nearbyint(0.5 * x);
    const double s = std::sin(kPi * r);
    const double c = std::cos(kPi * r);
    return digamma(1.0 - x) - kPi * c / s;
  }
  double shift = 0.0;
  while (x < 10.0) {
    shift += 1.0 / x;
    x += 1.0;
  }
  return digamma_asymptotic(x) - shift;
}

double beta(double x, double y) {
  if (!(x > 0.0) || !std::isfinite(x)) domain_failure("beta", x);
  if (!(y > 0.0) || !std::isfinite(y)) domain_failure("beta", y);
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

double phi_combo(double alpha, double beta_) {
  if (!(alpha > -1.0)) domain_failure("phi_combo", alpha);
  if (!(beta_ > 0.0)) domain_failure("phi_combo", beta_);
  return beta(alpha + 1.0, beta_) * (digamma(alpha + beta_ + 1.0) - digamma(beta_));
}

}  // namespace chebquad::special
