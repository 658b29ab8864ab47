#pragma once

// Scalar special functions used by the modified-moment seeds and the
// log-weight asymptotics. All functions are pure and deterministic.

namespace chebquad::special {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// ln Gamma(x) for x > 0. Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// Gamma(x) for x > 0, through log_gamma.
double gamma(double x);

/// Psi(x) = Gamma'(x)/Gamma(x). Negative arguments go through the reflection
/// formula; throws std::domain_error at the poles 0, -1, -2, ...
double digamma(double x);

/// B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y) for x, y > 0, evaluated in log space.
/// The code path is symmetric, so beta(x, y) == beta(y, x) bit for bit.
double beta(double x, double y);

/// Phi(a, b) = B(a+1, b) [Psi(a+b+1) - Psi(b)] for a > -1, b > 0.
///
/// Equivalently Phi(a, b) = -int_0^1 u^(b-1) (1-u)^a ln(u) du, which is the
/// building block of the log-Jacobi moment seeds.
double phi_combo(double alpha, double beta);

}  // namespace chebquad::special
