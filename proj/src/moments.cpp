#include "chebquad/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chebquad/errors.hpp"
#include "chebquad/special.hpp"
#include "text.hpp"

extern "C" void dgtsv_(const int* n, const int* nrhs, double* dl, double* d, double* du, double* b,
                       const int* ldb, int* info);

namespace chebquad {

using special::kPi;

double WeightSpec::operator()(double one_plus_x, double one_minus_x) const {
  const double w = std::pow(one_minus_x, alpha) * std::pow(one_plus_x, beta);
  if (kind == WeightKind::Jacobi) return w;
  return w * std::log(0.5 * one_plus_x);
}

void validate(const WeightSpec& weight) {
  if (!(weight.alpha > -1.0) || !(weight.beta > -1.0) || !std::isfinite(weight.alpha) ||
      !std::isfinite(weight.beta)) {
    throw std::invalid_argument("weight parameters must satisfy alpha > -1 and beta > -1");
  }
}

std::string to_string(const WeightSpec& weight) {
  return std::string(weight.kind == WeightKind::Jacobi ? "jacobi:" : "logjacobi:") + detail::shortest(weight.alpha) +
         ":" + detail::shortest(weight.beta);
}

std::optional<WeightSpec> parse_weight(std::string_view text) {
  const auto parts = detail::split(text, ':');
  if (parts.size() != 3) return std::nullopt;
  const auto a = detail::parse_double(parts[1]);
  const auto b = detail::parse_double(parts[2]);
  if (!a || !b) return std::nullopt;
  if (parts[0] == "jacobi") return WeightSpec::jacobi(*a, *b);
  if (parts[0] == "logjacobi") return WeightSpec::log_jacobi(*a, *b);
  return std::nullopt;
}

namespace {

bool near_half_integer(double x, double tol) {
  const double nearest = std::floor(x) + 0.5;
  return std::abs(x - nearest) <= tol;
}

// cos(pi x) and sin(pi x), exactly zero at the half-integers / integers.
double cos_pi(double x) {
  const double r = x - 2.0 * std::nearbyint(0.5 * x);
  if (std::abs(r) == 0.5) return 0.0;
  return std::cos(kPi * r);
}

double sin_pi(double x) {
  const double r = x - 2.0 * std::nearbyint(0.5 * x);
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
  return std::sin(kPi * r);
}

// Power series in z = u^2, truncated to a fixed number of terms.
using Series = std::vector<double>;

Series sinc_series(int terms) {  // sin(u)/u
  Series s(terms);
  double f = 1.0;
  for (int m = 0; m < terms; ++m) {
    s[m] = (m % 2 == 0 ? 1.0 : -1.0) / f;
    f *= (2.0 * m + 2.0) * (2.0 * m + 3.0);
  }
  return s;
}

Series cos_series(int terms) {  // cos(u)
  Series s(terms);
  double f = 1.0;
  for (int m = 0; m < terms; ++m) {
    s[m] = (m % 2 == 0 ? 1.0 : -1.0) / f;
    f *= (2.0 * m + 1.0) * (2.0 * m + 2.0);
  }
  return s;
}

// P^a for P(0) = 1 (J.C.P. Miller recurrence).
Series series_pow(const Series& p, double a) {
  Series q(p.size(), 0.0);
  q[0] = 1.0;
  for (std::size_t m = 1; m < p.size(); ++m) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
      acc += ((a + 1.0) * static_cast<double>(k) - static_cast<double>(m)) * p[k] * q[m - k];
    }
    q[m] = acc / static_cast<double>(m);
  }
  return q;
}

// log P for P(0) = 1.
Series series_log(const Series& p) {
  Series l(p.size(), 0.0);
  for (std::size_t m = 1; m < p.size(); ++m) {
    double acc = 0.0;
    for (std::size_t k = 1; k < m; ++k) acc += static_cast<double>(k) * l[k] * p[m - k];
    l[m] = p[m] - acc / static_cast<double>(m);
  }
  return l;
}

Series series_mul(const Series& a, const Series& b) {
  Series c(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < c.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series scaled(Series s, double f) {
  for (auto& v : s) v *= f;
  return s;
}

// Near one endpoint (local angle phi from the endpoint) the integrand of
//   int_0^pi h(theta) cos(k theta) d theta
// behaves like sum_m phi^{mu_m} (A_m + B_m ln phi), mu_m = 1 + 2p + 2m, and
// each power contributes Gamma(mu+1) cos(pi (mu+1)/2) k^{-mu-1} (and its mu
// derivative for the logarithmic part).
struct Endpoint {
  double p = 0.0;  // alpha at theta = 0, beta at theta = pi
  Series A, B;
  bool alternating = false;  // the theta = pi endpoint carries (-1)^k
};

double endpoint_term(const Endpoint& e, int m, double k) {
  const double a = e.A[m];
  const double b = e.B.empty() ? 0.0 : e.B[m];
  if (a == 0.0 && b == 0.0) return 0.0;
  const double order = 2.0 + 2.0 * e.p + 2.0 * m;  // mu + 1
  const double sign = (m % 2 == 0) ? -1.0 : 1.0;  // (-1)^{m+1}
  const double c = sign * cos_pi(e.p);
  const double s = sign * sin_pi(e.p);
  const double mag = std::exp(special::log_gamma(order) - order * std::log(k));
  const double f0 = c * mag;
  double t = a * f0;
  if (b != 0.0) {
    const double f1 = f0 * (special::digamma(order) - std::log(k)) - 0.5 * kPi * s * mag;
    t += b * f1;
  }
  return t;
}

std::vector<Endpoint> endpoint_expansions(const WeightSpec& w, int terms) {
  const double ea = 1.0 + 2.0 * w.alpha;
  const double eb = 1.0 + 2.0 * w.beta;
  const double scale = std::pow(2.0, w.alpha + w.beta + 1.0);
  const Series S = sinc_series(terms);
  const Series C = cos_series(terms);

  // theta = 0: h = u^ea S^ea C^eb, u = theta/2; theta = pi mirrors alpha <-> beta.
  const Series D0 = series_mul(series_pow(S, ea), series_pow(C, eb));
  const Series Dpi = series_mul(series_pow(S, eb), series_pow(C, ea));

  Endpoint left{w.alpha, {}, {}, false};
  Endpoint right{w.beta, {}, {}, true};
  left.A.resize(terms);
  right.A.resize(terms);

  if (w.kind == WeightKind::Jacobi) {
    for (int m = 0; m < terms; ++m) {
      left.A[m] = scale * D0[m] * std::pow(2.0, -(ea + 2.0 * m));
      right.A[m] = scale * Dpi[m] * std::pow(2.0, -(eb + 2.0 * m));
    }
  } else {
    // ln((1+x)/2) = 2 ln cos(theta/2): analytic at theta = 0, 2 ln(phi/2) + 2 ln sinc at theta = pi.
    const Series L0 = series_mul(D0, scaled(series_log(C), 2.0));
    const Series Lpi = series_mul(Dpi, scaled(series_log(S), 2.0));
    right.B.resize(terms);
    for (int m = 0; m < terms; ++m) {
      const double f0 = scale * std::pow(2.0, -(ea + 2.0 * m));
      const double fpi = scale * std::pow(2.0, -(eb + 2.0 * m));
      left.A[m] = f0 * L0[m];
      right.A[m] = fpi * (Lpi[m] - 2.0 * std::log(2.0) * Dpi[m]);
      right.B[m] = fpi * 2.0 * Dpi[m];
    }
  }
  return {left, right};
}

double seed_scale(double alpha, double beta) { return std::pow(2.0, alpha + beta + 1.0); }

double jacobi_m0(double alpha, double beta) {
  return seed_scale(alpha, beta) * special::beta(alpha + 1.0, beta + 1.0);
}

// Solves equations k = 2..N-1 of
//   (s+k+2) y_{k+1} + 2(a-b) y_k + (s-k+2) y_{k-1} = rhs_k
// for y_2..y_{N-1}, given y_1 and y_N. y_0 is copied through.
std::vector<double> solve_recurrence_bvp(double alpha, double beta, double y0, double y1, double yN,
                                         std::size_t N, const std::vector<double>& rhs) {
  const double s = alpha + beta;
  const int n = static_cast<int>(N) - 2;
  std::vector<double> dl(std::max(n - 1, 1)), d(n), du(std::max(n - 1, 1)), b(n);
  for (int i = 0; i < n; ++i) {
    const double k = i + 2.0;
    d[i] = 2.0 * (alpha - beta);
    b[i] = rhs[i + 2];
    if (i + 1 < n) {
      du[i] = s + k + 2.0;
      dl[i] = s - (k + 1.0) + 2.0;
    }
  }
  b[0] -= (s - 2.0 + 2.0) * y1;
  b[n - 1] -= (s + static_cast<double>(N - 1) + 2.0) * yN;

  const int nrhs = 1;
  int info = 0;
  dgtsv_(&n, &nrhs, dl.data(), d.data(), du.data(), b.data(), &n, &info);
  if (info != 0) throw NumericalFailure("moment boundary-value system is singular");

  std::vector<double> y(N + 1);
  y[0] = y0;
  y[1] = y1;
  for (int i = 0; i < n; ++i) y[i + 2] = b[i];
  y[N] = yN;
  return y;
}

double recurrence_residual(double alpha, double beta, const std::vector<double>& y,
                           const std::vector<double>* rhs, std::size_t k, double floor_scale) {
  const double s = alpha + beta;
  const double dk = static_cast<double>(k);
  const double t1 = (s + dk + 2.0) * y[k + 1];
  const double t2 = 2.0 * (alpha - beta) * y[k];
  const double t3 = (s - dk + 2.0) * y[k - 1];
  const double r = rhs ? (*rhs)[k] : 0.0;
  const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(r), floor_scale});
  return scale > 0.0 ? std::abs(t1 + t2 + t3 - r) / scale : 0.0;
}

struct Boundary {
  std::size_t N;
  double value;
  double rel_error;
};

// Picks the right boundary index for the banded solve: at least max(2K, 64),
// doubled until the endpoint expansion is below 1e-13 relative.
Boundary choose_boundary(const WeightSpec& w, std::size_t K) {
  std::size_t N = std::max<std::size_t>(2 * K, 64);
  constexpr std::size_t kMaxN = std::size_t{1} << 22;
  for (;;) {
    const auto a = moment_asymptotic_series(w, static_cast<double>(N));
    const double rel = a.value != 0.0 ? a.error_estimate / std::abs(a.value) : a.error_estimate;
    if (rel <= 1e-13 || N >= kMaxN) return {N, a.value, rel};
    N *= 2;
  }
}

std::vector<double> forward(double alpha, double beta, double y0, double y1, std::size_t K,
                            const std::vector<double>* rhs) {
  const double s = alpha + beta;
  std::vector<double> y(K + 1);
  y[0] = y0;
  if (K >= 1) y[1] = y1;
  for (std::size_t k = 1; k < K; ++k) {
    const double dk = static_cast<double>(k);
    const double r = rhs ? (*rhs)[k] : 0.0;
    y[k + 1] = (r - 2.0 * (alpha - beta) * y[k] - (s - dk + 2.0) * y[k - 1]) / (s + dk + 2.0);
  }
  return y;
}

double forward_error_estimate(double alpha, double beta, const std::vector<double>& y,
                              const std::vector<double>* rhs) {
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < y.size(); ++k) {
    worst = std::max(worst, recurrence_residual(alpha, beta, y, rhs, k, 0.0));
  }
  return worst;
}

}  // namespace

bool needs_banded_solve(double alpha, double beta) {
  constexpr double kNeighbourhood = 0.05;
  return (alpha > beta && near_half_integer(beta, kNeighbourhood)) ||
         (beta > alpha && near_half_integer(alpha, kNeighbourhood));
}

AsymptoticSum moment_asymptotic_series(const WeightSpec& weight, double k, int max_terms) {
  validate(weight);
  const auto ends = endpoint_expansions(weight, max_terms);
  AsymptoticSum out;
  for (const auto& e : ends) {
    const double sign = (e.alternating && std::fmod(k, 2.0) != 0.0) ? -1.0 : 1.0;
    double sum = 0.0, prev = 0.0, err = 0.0;
    bool diverged = false;
    for (int m = 0; m < max_terms; ++m) {
      const double t = endpoint_term(e, m, k);
      if (t == 0.0) continue;
      if (prev != 0.0 && std::abs(t) > std::abs(prev)) {
        err = std::abs(prev);
        diverged = true;
        break;
      }
      sum += t;
      prev = t;
    }
    if (!diverged) err = std::abs(prev);
    out.value += sign * sum;
    out.error_estimate += err;
  }
  return out;
}

double moment_asymptotic(const WeightSpec& weight, std::size_t k) {
  validate(weight);
  if (k < 2) throw std::invalid_argument("moment_asymptotic needs k >= 2");
  const double a = weight.alpha;
  const double b = weight.beta;
  const double dk = static_cast<double>(k);
  const double alt = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
  if (weight.kind == WeightKind::Jacobi) {
    const double left = -std::pow(2.0, b - a) * cos_pi(a) * special::gamma(2.0 * a + 2.0) *
                        std::pow(dk, -2.0 - 2.0 * a);
    const double right = alt * std::pow(2.0, a - b) * cos_pi(b) * special::gamma(2.0 * b + 2.0) *
                         std::pow(dk, -2.0 - 2.0 * b);
    return left + right;
  }
  // cos(pi b) (pi/2) tan(pi b) is written as (pi/2) sin(pi b) so that
  // half-integer beta stays finite.
  const double bracket = cos_pi(b) * (-std::log(2.0 * dk) + special::digamma(2.0 * b + 2.0)) -
                         0.5 * kPi * sin_pi(b);
  const double right = alt * std::pow(2.0, a - b + 1.0) * special::gamma(2.0 * b + 2.0) *
                       std::pow(dk, -2.0 - 2.0 * b) * bracket;
  const double left = -std::pow(2.0, b - a - 2.0) * cos_pi(a) * special::gamma(2.0 * a + 4.0) *
                      std::pow(dk, -4.0 - 2.0 * a);
  return right + left;
}

MomentTable jacobi_moments(double alpha, double beta, std::size_t K) {
  const auto weight = WeightSpec::jacobi(alpha, beta);
  validate(weight);
  const double m0 = jacobi_m0(alpha, beta);
  const double m1 = m0 * (beta - alpha) / (beta + alpha + 2.0);

  MomentTable table{weight, K, {}, MomentMethod::Forward, 0.0};
  if (K < 2 || !needs_banded_solve(alpha, beta)) {
    table.values = forward(alpha, beta, m0, m1, K, nullptr);
    table.est_rel_error = forward_error_estimate(alpha, beta, table.values, nullptr);
    return table;
  }

  const auto bnd = choose_boundary(weight, K);
  const std::vector<double> zero(bnd.N + 1, 0.0);
  auto y = solve_recurrence_bvp(alpha, beta, m0, m1, bnd.value, bnd.N, zero);
  table.method = MomentMethod::BandedSolve;
  table.est_rel_error = recurrence_residual(alpha, beta, y, nullptr, 1, 0.0) + bnd.rel_error;
  y.resize(K + 1);
  table.values = std::move(y);
  return table;
}

MomentTable log_jacobi_moments(double alpha, double beta, std::size_t K) {
  const auto weight = WeightSpec::log_jacobi(alpha, beta);
  validate(weight);
  const double c = seed_scale(alpha, beta);
  const double phi1 = special::phi_combo(alpha, beta + 1.0);
  const double g0 = -c * phi1;
  const double g1 = -c * (2.0 * special::phi_combo(alpha, beta + 2.0) - phi1);

  MomentTable table{weight, K, {}, MomentMethod::Forward, 0.0};
  const bool banded = K >= 2 && needs_banded_solve(alpha, beta);
  const auto bnd = banded ? choose_boundary(weight, K) : Boundary{K, 0.0, 0.0};
  const std::size_t N = bnd.N;

  // Right-hand side r_k = 2M_k - M_{k-1} - M_{k+1}, k = 1..N-1.
  const auto m = jacobi_moments(alpha, beta, std::max<std::size_t>(N, 1));
  std::vector<double> rhs(N + 1, 0.0);
  for (std::size_t k = 1; k + 1 <= N && k + 1 < m.values.size(); ++k) {
    rhs[k] = 2.0 * m.values[k] - m.values[k - 1] - m.values[k + 1];
  }

  if (!banded) {
    table.values = forward(alpha, beta, g0, g1, K, &rhs);
    table.est_rel_error = forward_error_estimate(alpha, beta, table.values, &rhs) + m.est_rel_error;
    return table;
  }

  auto y = solve_recurrence_bvp(alpha, beta, g0, g1, bnd.value, bnd.N, rhs);
  table.method = MomentMethod::BandedSolve;
  table.est_rel_error = recurrence_residual(alpha, beta, y, &rhs, 1, 0.0) + bnd.rel_error + m.est_rel_error;
  y.resize(K + 1);
  table.values = std::move(y);
  return table;
}

MomentTable modified_moments(const WeightSpec& weight, std::size_t K) {
  return weight.kind == WeightKind::Jacobi ? jacobi_moments(weight.alpha, weight.beta, K)
                                           : log_jacobi_moments(weight.alpha, weight.beta, K);
}

}  // namespace chebquad
