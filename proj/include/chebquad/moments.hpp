#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chebquad {

enum class WeightKind {
  Jacobi,     ///< (1-x)^alpha (1+x)^beta
  LogJacobi,  ///< ln((1+x)/2) (1-x)^alpha (1+x)^beta
};

struct WeightSpec {
  WeightKind kind = WeightKind::Jacobi;
  double alpha = 0.0;
  double beta = 0.0;

  static WeightSpec jacobi(double alpha, double beta) { return {WeightKind::Jacobi, alpha, beta}; }
  static WeightSpec log_jacobi(double alpha, double beta) { return {WeightKind::LogJacobi, alpha, beta}; }

  bool is_legendre() const { return kind == WeightKind::Jacobi && alpha == 0.0 && beta == 0.0; }

  /// w(x) from the endpoint distances 1+x and 1-x, which callers near the
  /// endpoints can supply more accurately than x itself.
  double operator()(double one_plus_x, double one_minus_x) const;
  double at(double x) const { return (*this)(1.0 + x, 1.0 - x); }

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

/// Throws std::invalid_argument unless alpha > -1 and beta > -1.
void validate(const WeightSpec& weight);

/// "jacobi:A:B" / "logjacobi:A:B"
std::string to_string(const WeightSpec& weight);
std::optional<WeightSpec> parse_weight(std::string_view text);

enum class MomentMethod { Forward, BandedSolve };

/// Modified moments int w(x) T_k(x) dx for k = 0..K.
struct MomentTable {
  WeightSpec weight;
  std::size_t K = 0;
  std::vector<double> values;
  MomentMethod method = MomentMethod::Forward;
  /// Largest relative residual of a recurrence equation that the chosen
  /// method did not enforce by construction (plus the boundary error for the
  /// banded solve). Not an a-priori bound.
  double est_rel_error = 0.0;
};

/// True for the parameter pairs where forward recursion loses the decaying
/// solution: alpha > beta with beta (near) a half-integer, or the mirror case.
/// Half-integers within 1e-12 and their 0.05-neighbourhoods both qualify.
bool needs_banded_solve(double alpha, double beta);

/// M_k(alpha, beta) = int (1-x)^alpha (1+x)^beta T_k(x) dx, k = 0..K.
///
/// Runs the three-term recurrence
///   (a+b+k+2) M_{k+1} + 2(a-b) M_k + (a+b-k+2) M_{k-1} = 0
/// forward from the Gamma-function seeds, or, for the pairs flagged by
/// needs_banded_solve, as a tridiagonal boundary-value problem with M_0, M_1
/// on the left and the endpoint asymptotic expansion at an index N >= 2K
/// on the right.
MomentTable jacobi_moments(double alpha, double beta, std::size_t K);

/// G_k(alpha, beta) = int ln((1+x)/2) (1-x)^alpha (1+x)^beta T_k(x) dx.
/// Same recurrence with right-hand side 2M_k - M_{k-1} - M_{k+1}, seeded with
/// G_0 = -2^{a+b+1} Phi(a, b+1) and G_1 = -2^{a+b+1} [2 Phi(a, b+2) - Phi(a, b+1)].
MomentTable log_jacobi_moments(double alpha, double beta, std::size_t K);

/// Dispatches on weight.kind.
MomentTable modified_moments(const WeightSpec& weight, std::size_t K);

/// Leading-order large-k behaviour: both endpoint terms for the Jacobi weight;
/// the logarithmic term from x = -1 and the k^{-4-2alpha} term from x = 1 for
/// the log-Jacobi weight. Requires k >= 2.
double moment_asymptotic(const WeightSpec& weight, std::size_t k);

struct AsymptoticSum {
  double value = 0.0;
  double error_estimate = 0.0;  ///< magnitude of the first omitted term
};

/// Multi-term endpoint expansion of the moment (both endpoints, up to
/// max_terms powers each), summed until the terms stop decreasing.
AsymptoticSum moment_asymptotic_series(const WeightSpec& weight, double k, int max_terms = 16);

}  // namespace chebquad
