#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chebquad/aliasing.hpp"
#include "chebquad/chebcore.hpp"
#include "chebquad/moments.hpp"
#include "chebquad/rules.hpp"

namespace chebquad {

enum class TestKind {
  AbsPow,   ///< |x - c|^s
  PowPlus,  ///< (x - c)_+^s
  Custom,
};

struct TestFunction {
  TestKind kind = TestKind::AbsPow;
  double c = 0.0;  ///< kink location in (-1, 1)
  double s = 1.0;  ///< smoothness: Chebyshev coefficients decay like j^{-s-1}
  std::function<double(double)> custom;
  std::string label;  ///< used for Custom in reports

  static TestFunction abs_pow(double c, double s) { return {TestKind::AbsPow, c, s, {}, {}}; }
  static TestFunction pow_plus(double xi, double s) { return {TestKind::PowPlus, xi, s, {}, {}}; }
  static TestFunction make_custom(std::function<double(double)> f, double s, std::string label) {
    return {TestKind::Custom, 0.0, s, std::move(f), std::move(label)};
  }

  double operator()(double x) const;
};

/// "abspow:C:S" / "powplus:XI:S"
std::string to_string(const TestFunction& f);
std::optional<TestFunction> parse_test_function(std::string_view text);

struct OracleResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double method_a = 0.0;  ///< panelled tanh-sinh
  double method_b = 0.0;  ///< geometrically graded composite Gauss-Legendre
};

/// int_{-1}^{1} w(x) f(x) dx in extended precision, split at the kink of f.
/// Endpoint and kink distances are carried exactly into the integrand so the
/// algebraic and logarithmic singularities do not lose precision. Throws
/// NumericalFailure when the two methods differ by more than 1e-11.
OracleResult reference_integral(const WeightSpec& weight, const TestFunction& f);

/// Same for an arbitrary integrand g(x) (no weight, no kink handling).
OracleResult reference_integral(const std::function<double(double)>& g);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t count = 0;
};

/// Least squares on (ln n, ln error) over n in [window.first, window.second].
/// Zero and non-finite errors are skipped. Throws std::invalid_argument with
/// fewer than 5 usable points or a degenerate abscissa.
SlopeFit fit_slope(const std::vector<std::size_t>& ns, const std::vector<double>& errors,
                   std::pair<std::size_t, std::size_t> window);

/// Any rule family for n points. Gauss-Legendre needs the Legendre weight.
QuadratureRule build_rule(Family family, std::size_t n, const WeightSpec& weight);

struct TheoreticalRate {
  double slope = 0.0;
  bool log_factor = false;
  bool one_sided = false;  ///< the rate is only an upper bound on the error
};

/// Gauss (w == 1): -2s for s < 1, -2 with ln n for s = 1, -s-1 for s > 1.
/// Jacobi: -s-1 if min(alpha, beta) >= -1/2, else -s-2-2 min(alpha, beta).
/// LogJacobi: -s-1 if beta > -1/2, else -s-2-2 beta with ln n.
TheoreticalRate theoretical_rate(Family family, const WeightSpec& weight, double s);

struct ConvergenceOptions {
  std::optional<std::pair<std::size_t, std::size_t>> fit_window;  ///< default [max(100, n_min), n_max]
  double slope_tolerance = 0.2;
  double noise_factor = 1e3;  ///< errors below noise_factor * oracle error are not fitted
};

struct ConvergenceReport {
  Family family = Family::ClenshawCurtis;
  WeightSpec weight;
  TestFunction test;
  std::vector<std::size_t> ns;
  std::vector<double> abs_errors;
  std::vector<bool> used_in_fit;
  double reference = 0.0;
  double reference_error = 0.0;
  double fitted_slope = 0.0;
  double r_squared = 0.0;
  double theoretical_slope = 0.0;
  bool log_factor = false;
  bool one_sided = false;
  double slope_tolerance = 0.2;
  std::pair<std::size_t, std::size_t> fit_window{0, 0};
  bool pass = false;
};

/// Errors |I[f] - I_n[f]| over ns (strictly increasing, within [2, 5000]) and
/// the fitted versus predicted log-log slope. Pass is |fitted - predicted| <=
/// tolerance, or fitted <= predicted + tolerance when the predicted rate is
/// one-sided (Gauss with s <= 1).
ConvergenceReport convergence_study(Family family, const WeightSpec& weight, const TestFunction& f,
                                    const std::vector<std::size_t>& ns, const ConvergenceOptions& options = {});

struct WeightSumRow {
  std::size_t n = 0;
  double abs_sum = 0.0;
  double deviation = 0.0;  ///< | sum |w_j| - int |w| |
};

/// sum_j |w_j| against int |w| (= |m_0|, the weights being of one sign).
std::vector<WeightSumRow> weight_sum_study(Family family, const WeightSpec& weight,
                                           const std::vector<std::size_t>& ns);

struct DecayFit {
  SlopeFit fit;
  double theoretical = 0.0;
  bool log_divided = false;
};

/// Fitted decay exponent of |M_k| (or |G_k| / ln 2k) over k in [k_min, k_max],
/// skipping moments that vanish identically. Theoretical exponent is
/// -2-2 minbar(alpha, beta) for Jacobi and -2-2 beta for LogJacobi.
DecayFit moment_decay_fit(const WeightSpec& weight, std::size_t k_min, std::size_t k_max);

/// True when every M_k, k >= 3, vanishes identically (both parameters half-integers).
bool moments_vanish_eventually(const WeightSpec& weight);

/// n-point Gauss-Jacobi rule for (1-x)^alpha (1+x)^beta. Eigenvalues of the
/// Jacobi matrix, one Newton polish, Christoffel-function weights. Used only
/// to compare against the Chebyshev-point rules.
QuadratureRule gauss_jacobi(std::size_t n, double alpha, double beta);

struct OpenProblemReport {
  WeightSpec weight;
  TestFunction test;
  std::vector<std::size_t> ns;
  std::vector<double> cc_errors;
  std::vector<double> gauss_jacobi_errors;
  std::vector<double> gauss_legendre_wf_errors;  ///< Gauss-Legendre applied to w f
  double reference_slope = 0.0;                   ///< the Chebyshev-point rate
  std::optional<SlopeFit> cc_fit;
  std::optional<SlopeFit> gauss_jacobi_fit;
  std::optional<SlopeFit> gauss_legendre_wf_fit;
};

/// Gauss versus Clenshaw-Curtis on a Jacobi weight. Reported, never judged.
OpenProblemReport gauss_open_problem(const WeightSpec& weight, const TestFunction& f,
                                     const std::vector<std::size_t>& ns,
                                     std::optional<std::pair<std::size_t, std::size_t>> fit_window = {});

/// error_series_check with the exact integral from the oracle.
SeriesCheck error_series_check(Family family, std::size_t n, const TestFunction& f, const WeightSpec& weight,
                               std::size_t truncation);

/// round(lo * (hi/lo)^(i/(count-1))), deduplicated.
std::vector<std::size_t> geometric_grid(std::size_t lo, std::size_t hi, std::size_t count);

}  // namespace chebquad
