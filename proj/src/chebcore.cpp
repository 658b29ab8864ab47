#include "chebquad/chebcore.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "chebquad/special.hpp"
#include "dct.hpp"

namespace chebquad {

using special::kPi;

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Fejer1: return "fejer1";
    case Family::Fejer2: return "fejer2";
    case Family::ClenshawCurtis: return "clenshaw-curtis";
    case Family::GaussLegendre: return "gauss-legendre";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view text) {
  if (text == "f1" || text == "fejer1") return Family::Fejer1;
  if (text == "f2" || text == "fejer2") return Family::Fejer2;
  if (text == "cc" || text == "clenshaw-curtis") return Family::ClenshawCurtis;
  if (text == "gauss" || text == "gl" || text == "gauss-legendre") return Family::GaussLegendre;
  return std::nullopt;
}

double ChebCoeffs::evaluate(double x) const {
  if (coeffs.empty()) return 0.0;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = coeffs.size() - 1; j >= 1; --j) {
    const double b0 = 2.0 * x * b1 - b2 + coeffs[j];
    b2 = b1;
    b1 = b0;
  }
  const double c0 = convention == CoeffConvention::HalvedFirst ? 0.5 * coeffs[0] : coeffs[0];
  return x * b1 - b2 + c0;
}

ChebCoeffs ChebCoeffs::to_plain() const {
  ChebCoeffs out{coeffs, CoeffConvention::Plain};
  if (convention == CoeffConvention::HalvedFirst && !out.coeffs.empty()) out.coeffs[0] *= 0.5;
  return out;
}

double chebyshev_T(std::size_t j, double x) {
  if (std::abs(x) > 1.0) {
    if (std::abs(x) > 1.0 + 1e-14) {
      throw std::domain_error("chebyshev_T: |x| > 1 (x = " + std::to_string(x) + ")");
    }
    x = std::copysign(1.0, x);
  }
  if (j == 0) return 1.0;
  return std::cos(static_cast<double>(j) * std::acos(x));
}

namespace {

void require_chebyshev(Family family, std::size_t n) {
  if (!is_chebyshev_family(family)) {
    throw std::invalid_argument("Chebyshev point sets are defined for fejer1, fejer2, clenshaw-curtis");
  }
  if (n == 0) throw std::invalid_argument("point count must be positive");
  if (family == Family::ClenshawCurtis && n < 2) {
    throw std::invalid_argument("clenshaw-curtis needs n >= 2");
  }
}

std::vector<double> family_angles(Family family, std::size_t n) {
  std::vector<double> theta(n);
  const auto dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = static_cast<double>(i);
    switch (family) {
      case Family::Fejer1: theta[i] = (2.0 * di + 1.0) * kPi / (2.0 * dn); break;
      case Family::Fejer2: theta[i] = (di + 1.0) * kPi / (dn + 1.0); break;
      case Family::ClenshawCurtis: theta[i] = di * kPi / (dn - 1.0); break;
      case Family::GaussLegendre: break;
    }
  }
  return theta;
}

// cos(k pi / d) with the symmetric half computed by reflection, so that point
// sets are exactly antisymmetric and the centre point is exactly zero.
double cos_pi_ratio(std::size_t k, std::size_t d) {
  if (2 * k == d) return 0.0;
  if (2 * k > d) return -cos_pi_ratio(d - k, d);
  return std::cos(kPi * static_cast<double>(k) / static_cast<double>(d));
}

void require_length(Family family, std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("empty sample vector");
  require_chebyshev(family, samples.size());
}

// Fejer2 helper: interpolant coefficients in the U basis -> T basis.
std::vector<double> u_to_t(std::span<const double> c) {
  const auto n = c.size();
  std::vector<double> b(n, 0.0);
  double tail[2] = {0.0, 0.0};  // suffix sums by parity
  for (std::size_t k = n; k-- > 0;) {
    tail[k % 2] += c[k];
    b[k] = 2.0 * tail[k % 2];
  }
  b[0] = tail[0];
  return b;
}

// Transpose of u_to_t: U-basis moments from T-basis moments.
std::vector<double> t_to_u_moments(std::span<const double> m) {
  const auto n = m.size();
  std::vector<double> u(n, 0.0);
  double run[2] = {0.0, 0.0};  // prefix sums of m_j, j >= 1, by parity
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= 1) run[k % 2] += m[k];
    u[k] = 2.0 * run[k % 2] + (k % 2 == 0 ? m[0] : 0.0);
  }
  return u;
}

}  // namespace

PointSet make_points(Family family, std::size_t n) {
  require_chebyshev(family, n);
  PointSet set{family, n, std::vector<double>(n), family_angles(family, n)};
  for (std::size_t i = 0; i < n; ++i) {
    switch (family) {
      case Family::Fejer1: set.points[i] = cos_pi_ratio(2 * i + 1, 2 * n); break;
      case Family::Fejer2: set.points[i] = cos_pi_ratio(i + 1, n + 1); break;
      case Family::ClenshawCurtis: set.points[i] = cos_pi_ratio(i, n - 1); break;
      case Family::GaussLegendre: break;
    }
  }
  return set;
}

ChebCoeffs interp_coeffs(Family family, std::span<const double> samples) {
  require_length(family, samples);
  const auto n = samples.size();
  const auto dn = static_cast<double>(n);
  ChebCoeffs out;
  switch (family) {
    case Family::Fejer1: {
      out.coeffs = detail::r2r(detail::R2RKind::Dct2, samples);
      for (auto& v : out.coeffs) v /= dn;
      out.coeffs[0] *= 0.5;
      break;
    }
    case Family::ClenshawCurtis: {
      const double big_n = dn - 1.0;
      out.coeffs = detail::r2r(detail::R2RKind::Dct1, samples);
      for (auto& v : out.coeffs) v /= big_n;
      out.coeffs.front() *= 0.5;
      out.coeffs.back() *= 0.5;
      break;
    }
    case Family::Fejer2: {
      const auto theta = family_angles(family, n);
      std::vector<double> g(n);
      for (std::size_t i = 0; i < n; ++i) g[i] = samples[i] * std::sin(theta[i]);
      auto c = detail::r2r(detail::R2RKind::Dst1, g);
      for (auto& v : c) v /= dn + 1.0;
      out.coeffs = u_to_t(c);
      break;
    }
    case Family::GaussLegendre: break;
  }
  return out;
}

ChebCoeffs interp_coeffs_direct(Family family, std::span<const double> samples) {
  require_length(family, samples);
  const auto n = samples.size();
  const auto dn = static_cast<double>(n);
  const auto theta = family_angles(family, n);
  ChebCoeffs out{std::vector<double>(n, 0.0), CoeffConvention::Plain};
  switch (family) {
    case Family::Fejer1:
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += samples[i] * std::cos(static_cast<double>(j) * theta[i]);
        out.coeffs[j] = (j == 0 ? 1.0 : 2.0) * s / dn;
      }
      break;
    case Family::ClenshawCurtis: {
      const double big_n = dn - 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double half = (i == 0 || i == n - 1) ? 0.5 : 1.0;
          s += half * samples[i] * std::cos(static_cast<double>(j) * theta[i]);
        }
        out.coeffs[j] = ((j == 0 || j == n - 1) ? 1.0 : 2.0) * s / big_n;
      }
      break;
    }
    case Family::Fejer2: {
      std::vector<double> c(n, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          s += samples[i] * std::sin(theta[i]) * std::sin(static_cast<double>(k + 1) * theta[i]);
        }
        c[k] = 2.0 * s / (dn + 1.0);
      }
      out.coeffs = u_to_t(c);
      break;
    }
    case Family::GaussLegendre: break;
  }
  return out;
}

std::vector<double> interp_transpose(Family family, std::span<const double> moments) {
  require_length(family, moments);
  const auto n = moments.size();
  const auto dn = static_cast<double>(n);
  std::vector<double> w;
  switch (family) {
    case Family::Fejer1:
      w = detail::r2r(detail::R2RKind::Dct3, moments);
      for (auto& v : w) v /= dn;
      break;
    case Family::ClenshawCurtis:
      w = detail::r2r(detail::R2RKind::Dct1, moments);
      for (auto& v : w) v /= dn - 1.0;
      w.front() *= 0.5;
      w.back() *= 0.5;
      break;
    case Family::Fejer2: {
      const auto u = t_to_u_moments(moments);
      w = detail::r2r(detail::R2RKind::Dst1, u);
      const auto theta = family_angles(family, n);
      for (std::size_t i = 0; i < n; ++i) w[i] *= std::sin(theta[i]) / (dn + 1.0);
      break;
    }
    case Family::GaussLegendre: break;
  }
  return w;
}

ChebCoeffs cheb_expansion_coeffs(const std::function<double(double)>& f, std::size_t count,
                                 std::size_t oversample) {
  if (oversample < 4 * count) {
    throw std::invalid_argument("cheb_expansion_coeffs: oversample must be >= 4 * count");
  }
  if (count == 0) return {{}, CoeffConvention::HalvedFirst};
  const auto pts = make_points(Family::Fejer1, oversample);
  std::vector<double> samples(oversample);
  for (std::size_t i = 0; i < oversample; ++i) samples[i] = f(pts.points[i]);
  auto y = detail::r2r(detail::R2RKind::Dct2, samples);
  y.resize(count);
  for (auto& v : y) v /= static_cast<double>(oversample);
  return {std::move(y), CoeffConvention::HalvedFirst};
}

}  // namespace chebquad
