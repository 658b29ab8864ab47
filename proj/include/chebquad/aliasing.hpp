#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "chebquad/chebcore.hpp"
#include "chebquad/moments.hpp"
#include "chebquad/rules.hpp"

namespace chebquad {

/// Which aliasing identity explains I_n[T_m].
enum class AliasForm {
  Exact,          ///< m inside the exactness range of the rule
  Fejer1,         ///< I_n^{F1}[T_{2pn+-j}] = (-1)^p I[T_j], j <= n-1
  Fejer1Zero,     ///< m = (2p+1)n: T_m vanishes at every Fejer-1 point
  Fejer2,         ///< I_n^{F2}[T_{2p(n+1)+-j}] = I[T_j], j <= n-1
  Fejer2BoundaryN,   ///< m = (2p+1)(n+1) -+ 1: I_n^{F2}[T_m] = I_n^{F2}[T_n]
  Fejer2BoundaryNp1, ///< m = (2p+1)(n+1):     I_n^{F2}[T_m] = I_n^{F2}[T_{n+1}]
  ClenshawCurtis, ///< I_n^{CC}[T_{2p(n-1)+-j}] = I[T_j]
  GaussOdd,       ///< odd m: E_n^G[T_m] = 0 by symmetry
  GaussEven,      ///< m = j(4n+2) + 2r, |r| < n: I_n^G[T_m] ~ (-1)^j 2/(1-4r^2)
  GaussHalfPi,    ///< m = (2j-1)(2n+1) +- 1: I_n^G[T_m] ~ +-(-1)^{j+1} pi/2
};

std::string_view to_string(AliasForm form);

/// Canonical decomposition m = p * modulus +- j with 0 <= j <= modulus/2 and
/// p = round(m / modulus). Moduli: 2n (Fejer1), 2(n+1) (Fejer2), 2(n-1)
/// (Clenshaw-Curtis). For Gauss-Legendre the modulus is 4n+2 and j holds r
/// of m = p(4n+2) + 2r (zero for odd m).
struct AliasReduction {
  long p = 0;
  long j = 0;
  int sign = 1;
  AliasForm form = AliasForm::Exact;
};

AliasReduction alias_reduce(Family family, std::size_t n, std::size_t m);

struct AliasRecord {
  Family family = Family::Fejer1;
  std::size_t n = 0;
  std::size_t m = 0;
  AliasReduction reduction;
  double predicted = 0.0;     ///< E_n[T_m] from the reduced identity
  double computed = 0.0;      ///< m_m - sum_i w_i T_m(x_i)
  double residual = 0.0;      ///< |computed - predicted|
  double leading_term = 0.0;  ///< |m_j|, the leading term of |E_n[T_m]|
};

/// E_n[T_m] for the weighted Chebyshev-point rule, checked against the
/// aliasing identity. For the boundary forms the identity target is the
/// direct node sum of the reduced polynomial.
AliasRecord alias_error(Family family, std::size_t n, std::size_t m, const WeightSpec& weight);

/// alias_error over many m with one rule and one moment table.
std::vector<AliasRecord> alias_table(Family family, std::size_t n, const WeightSpec& weight,
                                     const std::vector<std::size_t>& ms);

/// E_n^G[T_m] = I[T_m] - I_n^G[T_m] for w == 1, with the leading-order
/// prediction. Residuals scale like m / n^2.
AliasRecord gauss_alias_error(std::size_t n, std::size_t m);
std::vector<AliasRecord> gauss_alias_table(std::size_t n, const std::vector<std::size_t>& ms);

/// The exponent helper of the moment decay law |M_m| = O(m^{-2-2 minbar}):
/// 0 if alpha = beta = -1/2, beta if only alpha = -1/2, alpha if only
/// beta = -1/2, min(alpha, beta) otherwise.
double minbar(double alpha, double beta);

/// I[T_m] = int_{-1}^{1} T_m(x) dx.
double legendre_moment(std::size_t m);

struct Integrand {
  std::function<double(double)> f;
  double exact = 0.0;  ///< int w f
};

struct SeriesCheck {
  double direct = 0.0;    ///< E_n[f] = exact - I_n[f]
  double series = 0.0;    ///< sum_{j=start}^{truncation} a_j E_n[T_j]
  double residual = 0.0;  ///< |direct - series|
};

/// Compares E_n[f] with the truncated aliasing series over the Chebyshev
/// coefficients of f; start is n for the Chebyshev-point rules and 2n for
/// Gauss-Legendre (where weight must be Legendre).
SeriesCheck error_series_check(Family family, std::size_t n, const Integrand& f, const WeightSpec& weight,
                               std::size_t truncation);

}  // namespace chebquad
