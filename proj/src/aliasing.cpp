#include "chebquad/aliasing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chebquad/special.hpp"
#include "chebquad/summation.hpp"

namespace chebquad {

using special::kPi;

std::string_view to_string(AliasForm form) {
  switch (form) {
    case AliasForm::Exact: return "exact";
    case AliasForm::Fejer1: return "fejer1";
    case AliasForm::Fejer1Zero: return "fejer1-zero";
    case AliasForm::Fejer2: return "fejer2";
    case AliasForm::Fejer2BoundaryN: return "fejer2-boundary-n";
    case AliasForm::Fejer2BoundaryNp1: return "fejer2-boundary-n+1";
    case AliasForm::ClenshawCurtis: return "clenshaw-curtis";
    case AliasForm::GaussOdd: return "gauss-odd";
    case AliasForm::GaussEven: return "gauss-even";
    case AliasForm::GaussHalfPi: return "gauss-half-pi";
  }
  return "unknown";
}

namespace {

void require_n(Family family, std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (family == Family::ClenshawCurtis && n < 2) throw std::invalid_argument("clenshaw-curtis needs n >= 2");
}

// Node angles theta_i = q_i pi / d as exact rationals.
struct AngleGrid {
  std::vector<std::size_t> q;
  std::size_t d = 1;
};

AngleGrid angle_grid(Family family, std::size_t n) {
  AngleGrid g;
  g.q.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (family) {
      case Family::Fejer1: g.q[i] = 2 * i + 1; g.d = 2 * n; break;
      case Family::Fejer2: g.q[i] = i + 1; g.d = n + 1; break;
      case Family::ClenshawCurtis: g.q[i] = i; g.d = n - 1; break;
      case Family::GaussLegendre: break;
    }
  }
  return g;
}

// cos(k pi / d) for any k >= 0, reduced exactly modulo 2d.
double cos_pi_rational(std::size_t k, std::size_t d) {
  k %= 2 * d;
  if (k > d) k = 2 * d - k;
  if (2 * k == d) return 0.0;
  if (2 * k > d) return -std::cos(kPi * static_cast<double>(d - k) / static_cast<double>(d));
  return std::cos(kPi * static_cast<double>(k) / static_cast<double>(d));
}

// sum_i w_i T_m(x_i) for a Chebyshev-point rule, with T_m evaluated by exact
// angle reduction.
double rule_on_T(const QuadratureRule& rule, const AngleGrid& grid, std::size_t m) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < rule.n; ++i) {
    // m * q_i can overflow only for astronomically large m
    const std::size_t k = (m % (2 * grid.d)) * grid.q[i];
    sum.add(rule.weights[i] * cos_pi_rational(k, grid.d));
  }
  return sum.value();
}

double gauss_on_T(const QuadratureRule& rule, std::size_t m) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < rule.n; ++i) sum.add(rule.weights[i] * chebyshev_T(m, rule.nodes[i]));
  return sum.value();
}

}  // namespace

AliasReduction alias_reduce(Family family, std::size_t n, std::size_t m) {
  require_n(family, n);
  AliasReduction red;
  const auto lm = static_cast<long>(m);
  const auto ln = static_cast<long>(n);

  if (family == Family::GaussLegendre) {
    if (m + 1 <= 2 * n) {
      red.j = lm;
      return red;
    }
    if (m % 2 == 1) {
      red.form = AliasForm::GaussOdd;
      return red;
    }
    const long mod = 4 * ln + 2;
    red.p = (lm + mod / 2) / mod;
    red.j = (lm - red.p * mod) / 2;
    const int parity = red.p % 2 == 0 ? 1 : -1;
    if (std::abs(red.j) == ln) {
      red.form = AliasForm::GaussHalfPi;
      red.sign = -parity;
    } else {
      red.form = AliasForm::GaussEven;
      red.sign = parity;
    }
    return red;
  }

  if (m + 1 <= n) {
    red.j = lm;
    return red;
  }
  long mod = 0;
  switch (family) {
    case Family::Fejer1: mod = 2 * ln; break;
    case Family::Fejer2: mod = 2 * (ln + 1); break;
    case Family::ClenshawCurtis: mod = 2 * (ln - 1); break;
    case Family::GaussLegendre: break;
  }
  red.p = (lm + mod / 2) / mod;
  red.j = std::abs(lm - red.p * mod);
  switch (family) {
    case Family::Fejer1:
      red.sign = red.p % 2 == 0 ? 1 : -1;
      red.form = red.j == ln ? AliasForm::Fejer1Zero : AliasForm::Fejer1;
      break;
    case Family::Fejer2:
      if (red.j == ln) {
        red.form = AliasForm::Fejer2BoundaryN;
      } else if (red.j == ln + 1) {
        red.form = AliasForm::Fejer2BoundaryNp1;
      } else {
        red.form = AliasForm::Fejer2;
      }
      break;
    case Family::ClenshawCurtis: red.form = AliasForm::ClenshawCurtis; break;
    case Family::GaussLegendre: break;
  }
  return red;
}

std::vector<AliasRecord> alias_table(Family family, std::size_t n, const WeightSpec& weight,
                                     const std::vector<std::size_t>& ms) {
  if (!is_chebyshev_family(family)) {
    throw std::invalid_argument("alias_table: use gauss_alias_table for gauss-legendre");
  }
  std::size_t top = n + 1;
  for (auto m : ms) top = std::max(top, m);
  const auto moments = modified_moments(weight, top);
  const auto& mom = moments.values;
  const auto rule = build_weighted_rule(family, n, weight, mom);
  const auto grid = angle_grid(family, n);

  std::vector<AliasRecord> out;
  out.reserve(ms.size());
  for (auto m : ms) {
    AliasRecord rec;
    rec.family = family;
    rec.n = n;
    rec.m = m;
    rec.reduction = alias_reduce(family, n, m);
    const auto j = static_cast<std::size_t>(rec.reduction.j);
    rec.computed = mom[m] - rule_on_T(rule, grid, m);
    double target = 0.0;
    switch (rec.reduction.form) {
      case AliasForm::Exact: target = mom[m]; break;
      case AliasForm::Fejer1Zero: target = 0.0; break;
      case AliasForm::Fejer2BoundaryN:
      case AliasForm::Fejer2BoundaryNp1: target = rule_on_T(rule, grid, j); break;
      default: target = mom[j]; break;
    }
    rec.predicted = mom[m] - rec.reduction.sign * target;
    rec.residual = std::abs(rec.computed - rec.predicted);
    rec.leading_term = std::abs(mom[j]);
    out.push_back(rec);
  }
  return out;
}

AliasRecord alias_error(Family family, std::size_t n, std::size_t m, const WeightSpec& weight) {
  return alias_table(family, n, weight, {m}).front();
}

double legendre_moment(std::size_t m) {
  if (m % 2 == 1) return 0.0;
  const auto dm = static_cast<double>(m);
  return 2.0 / (1.0 - dm * dm);
}

std::vector<AliasRecord> gauss_alias_table(std::size_t n, const std::vector<std::size_t>& ms) {
  const auto rule = gauss_legendre(n);
  std::vector<AliasRecord> out;
  out.reserve(ms.size());
  for (auto m : ms) {
    AliasRecord rec;
    rec.family = Family::GaussLegendre;
    rec.n = n;
    rec.m = m;
    rec.reduction = alias_reduce(Family::GaussLegendre, n, m);
    const double exact = legendre_moment(m);
    rec.computed = exact - gauss_on_T(rule, m);
    double lead = 0.0;
    switch (rec.reduction.form) {
      case AliasForm::GaussEven: {
        const auto r = static_cast<double>(rec.reduction.j);
        lead = 2.0 / (1.0 - 4.0 * r * r);
        break;
      }
      case AliasForm::GaussHalfPi: lead = kPi / 2.0; break;
      default: lead = exact; break;
    }
    rec.predicted = exact - rec.reduction.sign * lead;
    rec.residual = std::abs(rec.computed - rec.predicted);
    rec.leading_term = std::abs(lead);
    out.push_back(rec);
  }
  return out;
}

AliasRecord gauss_alias_error(std::size_t n, std::size_t m) { return gauss_alias_table(n, {m}).front(); }

double minbar(double alpha, double beta) {
  const auto is_half = [](double v) { return std::abs(v + 0.5) <= 1e-12; };
  if (is_half(alpha) && is_half(beta)) return 0.0;
  if (is_half(alpha)) return beta;
  if (is_half(beta)) return alpha;
  return std::min(alpha, beta);
}

SeriesCheck error_series_check(Family family, std::size_t n, const Integrand& f, const WeightSpec& weight,
                               std::size_t truncation) {
  require_n(family, n);
  const bool gauss = family == Family::GaussLegendre;
  if (gauss && !weight.is_legendre()) {
    throw std::invalid_argument("error_series_check: gauss-legendre needs the Legendre weight");
  }
  const std::size_t start = gauss ? 2 * n : n;
  if (truncation < start) throw std::invalid_argument("error_series_check: truncation below the series start");

  QuadratureRule rule;
  std::vector<double> mom;
  AngleGrid grid;
  if (gauss) {
    rule = gauss_legendre(n);
    mom.resize(truncation + 1);
    for (std::size_t j = 0; j <= truncation; ++j) mom[j] = legendre_moment(j);
  } else {
    mom = modified_moments(weight, std::max(truncation, n)).values;
    rule = build_weighted_rule(family, n, weight, mom);
    grid = angle_grid(family, n);
  }

  std::size_t oversample = 1;
  while (oversample < 4 * (truncation + 1)) oversample *= 2;
  const auto a = cheb_expansion_coeffs(f.f, truncation + 1, oversample);

  SeriesCheck out;
  out.direct = f.exact - chebquad::apply(rule, f.f);
  CompensatedSum series;
  for (std::size_t j = start; j <= truncation; ++j) {
    const double ij = gauss ? gauss_on_T(rule, j) : rule_on_T(rule, grid, j);
    series.add(a.coeffs[j] * (mom[j] - ij));
  }
  out.series = series.value();
  out.residual = std::abs(out.direct - out.series);
  return out;
}

}  // namespace chebquad
