#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace chebquad {

/// Quadrature rule families. The first three are built from Chebyshev point
/// sets; GaussLegendre uses the zeros of the Legendre polynomial.
enum class Family { Fejer1, Fejer2, ClenshawCurtis, GaussLegendre };

std::string_view to_string(Family family);

/// Accepts the short CLI spellings (f1, f2, cc, gauss) and the full names.
std::optional<Family> parse_family(std::string_view text);

constexpr bool is_chebyshev_family(Family family) {
  return family != Family::GaussLegendre;
}

/// Interpolation nodes of one of the Chebyshev families, in the order
///   Fejer1:          cos((2j-1) pi / 2n),  j = 1..n
///   Fejer2:          cos(j pi / (n+1)),    j = 1..n
///   ClenshawCurtis:  cos(j pi / (n-1)),    j = 0..n-1
/// i.e. strictly decreasing from the right end of [-1, 1].
struct PointSet {
  Family family = Family::Fejer1;
  std::size_t n = 0;
  std::vector<double> points;
  /// theta with points[i] == cos(angles[i]); exact multiples of pi/(2n),
  /// pi/(n+1) or pi/(n-1) up to one rounding.
  std::vector<double> angles;
};

/// Whether the leading coefficient enters the sum halved.
enum class CoeffConvention {
  Plain,        ///< sum_j c_j T_j          (interpolants)
  HalvedFirst,  ///< c_0/2 + sum_{j>=1} c_j T_j  (expansion coefficients a_j)
};

struct ChebCoeffs {
  std::vector<double> coeffs;
  CoeffConvention convention = CoeffConvention::Plain;

  /// Clenshaw summation of the series at x in [-1, 1].
  double evaluate(double x) const;
  /// Same polynomial with the Plain convention.
  ChebCoeffs to_plain() const;
};

/// T_j(x) = cos(j arccos x). |x| may exceed 1 by at most 1e-14 (clamped);
/// anything further throws std::domain_error.
double chebyshev_T(std::size_t j, double x);

/// Throws std::invalid_argument for n == 0, n < 2 with ClenshawCurtis, or
/// the GaussLegendre family.
PointSet make_points(Family family, std::size_t n);

/// Coefficients b_j of the degree n-1 interpolant sum_j b_j T_j through
/// samples taken at make_points(family, n), in the same order.
///
/// Fejer1 uses a DCT-II, ClenshawCurtis a DCT-I (endpoint samples halved),
/// and Fejer2 a DST-I of f sin(theta) followed by the U -> T basis change.
ChebCoeffs interp_coeffs(Family family, std::span<const double> samples);

/// O(n^2) direct summation of the same transform; kept as an independent
/// route for cross-checking interp_coeffs.
ChebCoeffs interp_coeffs_direct(Family family, std::span<const double> samples);

/// Transpose of the interp_coeffs map applied to `moments` (length n):
/// returns w with sum_i w_i f_i == sum_j b_j(f) moments_j for every f.
std::vector<double> interp_transpose(Family family, std::span<const double> moments);

/// Approximate Chebyshev expansion coefficients a_0..a_{count-1} (HalvedFirst
/// convention) from an `oversample`-point DCT-II of f at first-kind points.
/// Coefficients beyond `oversample` alias back into the result; their size is
/// not bounded here. Requires oversample >= 4 * count.
ChebCoeffs cheb_expansion_coeffs(const std::function<double(double)>& f,
                                 std::size_t count, std::size_t oversample);

}  // namespace chebquad
