#include "chebquad/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chebquad/errors.hpp"
#include "chebquad/special.hpp"
#include "text.hpp"

namespace chebquad {

namespace {

using Real = long double;

bool is_half(double v) { return std::abs(v + 0.5) <= 1e-12; }

void require_kink(double c, double s) {
  if (!(c > -1.0 && c < 1.0)) throw std::invalid_argument("test function kink must lie in (-1, 1)");
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("test function exponent must be positive");
}

}  // namespace

double TestFunction::operator()(double x) const {
  switch (kind) {
    case TestKind::AbsPow: return std::pow(std::abs(x - c), s);
    case TestKind::PowPlus: return x > c ? std::pow(x - c, s) : 0.0;
    case TestKind::Custom:
      if (!custom) throw std::invalid_argument("custom test function has no callable");
      return custom(x);
  }
  return 0.0;
}

std::string to_string(const TestFunction& f) {
  switch (f.kind) {
    case TestKind::AbsPow: return "abspow:" + detail::shortest(f.c) + ":" + detail::shortest(f.s);
    case TestKind::PowPlus: return "powplus:" + detail::shortest(f.c) + ":" + detail::shortest(f.s);
    case TestKind::Custom: return f.label.empty() ? std::string("custom") : f.label;
  }
  return "unknown";
}

std::optional<TestFunction> parse_test_function(std::string_view text) {
  const auto parts = detail::split(text, ':');
  if (parts.size() != 3) return std::nullopt;
  const auto c = detail::parse_double(parts[1]);
  const auto s = detail::parse_double(parts[2]);
  if (!c || !s) return std::nullopt;
  if (parts[0] == "abspow") return TestFunction::abs_pow(*c, *s);
  if (parts[0] == "powplus") return TestFunction::pow_plus(*c, *s);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reference oracle

namespace {

// A point of [-1, 1] together with its distances to the two endpoints and to
// the kink, each as accurate as the construction of the point allows.
struct Located {
  Real x;
  Real opx;  // 1 + x
  Real omx;  // 1 - x
  Real xmc;  // x - c
};

using PointFn = std::function<Real(const Located&)>;

struct Piece {
  Real lo;
  Real hi;
};

std::vector<Piece> pieces_for(std::optional<Real> kink) {
  if (kink) return {{-1.0L, *kink}, {*kink, 1.0L}};
  return {{-1.0L, 1.0L}};
}

Real integrate_tanh_sinh(const PointFn& g, const std::vector<Piece>& pieces, Real c, Real& l1) {
  boost::math::quadrature::tanh_sinh<Real> ts(15);
  Real total = 0.0L;
  l1 = 0.0L;
  for (const auto& pc : pieces) {
    const bool lo_end = pc.lo == -1.0L;
    const bool hi_end = pc.hi == 1.0L;
    // Tanh-sinh on a finite interval hands the functor xc = lo - x on the left
    // half and xc = hi - x on the right half.
    auto f = [&](Real x, Real xc) -> Real {
      Located p{x, 1.0L + x, 1.0L - x, x - c};
      if (xc < 0) {
        if (lo_end) p.opx = -xc;
        if (!lo_end) p.xmc = -xc;
      } else if (xc > 0) {
        if (hi_end) p.omx = xc;
        if (!hi_end) p.xmc = -xc;
      }
      return g(p);
    };
    Real err = 0.0L, piece_l1 = 0.0L;
    total += ts.integrate(f, pc.lo, pc.hi, 1e-17L, &err, &piece_l1);
    l1 += piece_l1;
  }
  return total;
}

Real integrate_graded_gauss(const PointFn& g, const std::vector<Piece>& pieces, Real c, Real& l1) {
  using Rule = boost::math::quadrature::gauss<Real, 30>;
  const auto& absc = Rule::abscissa();
  const auto& wts = Rule::weights();
  constexpr Real sigma = 0.15L;
  constexpr int layers = 64;

  Real total = 0.0L;
  l1 = 0.0L;
  // Integrate over t in [t0, t1], t the distance from the singular end `at`;
  // dir = +1 walks right from `at`, -1 walks left.
  auto panel = [&](Real at, int dir, bool at_endpoint, Real t0, Real t1) {
    const Real mid = 0.5L * (t0 + t1);
    const Real half = 0.5L * (t1 - t0);
    auto node = [&](Real t, Real w) {
      const Real x = at + dir * t;
      Located p{x, 1.0L + x, 1.0L - x, x - c};
      if (at_endpoint) {
        if (dir > 0) p.opx = t; else p.omx = t;
      } else {
        p.xmc = dir * t;
      }
      const Real v = w * half * g(p);
      total += v;
      l1 += std::abs(v);
    };
    for (std::size_t i = 0; i < absc.size(); ++i) {
      if (absc[i] == 0.0L) {
        node(mid, wts[i]);
      } else {
        node(mid - half * absc[i], wts[i]);
        node(mid + half * absc[i], wts[i]);
      }
    }
  };
  for (const auto& pc : pieces) {
    const Real h = 0.5L * (pc.hi - pc.lo);
    for (int side = 0; side < 2; ++side) {
      const Real at = side == 0 ? pc.lo : pc.hi;
      const int dir = side == 0 ? 1 : -1;
      const bool at_endpoint = side == 0 ? pc.lo == -1.0L : pc.hi == 1.0L;
      Real outer = h;
      for (int layer = 0; layer < layers; ++layer) {
        const Real inner = outer * sigma;
        panel(at, dir, at_endpoint, inner, outer);
        outer = inner;
      }
      panel(at, dir, at_endpoint, 0.0L, outer);
    }
  }
  return total;
}

OracleResult run_oracle(const PointFn& g, std::optional<Real> kink) {
  const auto pieces = pieces_for(kink);
  const Real c = kink.value_or(0.0L);
  Real l1a = 0.0L, l1b = 0.0L;
  const Real a = integrate_tanh_sinh(g, pieces, c, l1a);
  const Real b = integrate_graded_gauss(g, pieces, c, l1b);
  OracleResult out;
  out.method_a = static_cast<double>(a);
  out.method_b = static_cast<double>(b);
  out.value = static_cast<double>(a);
  const double diff = static_cast<double>(std::abs(a - b));
  out.error_estimate = std::max(diff, std::numeric_limits<double>::epsilon() * static_cast<double>(l1a));
  if (!std::isfinite(out.value) || !std::isfinite(out.method_b) || diff > 1e-11) {
    throw NumericalFailure("reference oracle disagreement: tanh-sinh " + detail::shortest(out.method_a) +
                           " vs graded Gauss " + detail::shortest(out.method_b));
  }
  return out;
}

Real weight_value(const WeightSpec& w, const Located& p) {
  Real v = 1.0L;
  if (w.alpha != 0.0) v *= std::pow(p.omx, static_cast<Real>(w.alpha));
  if (w.beta != 0.0) v *= std::pow(p.opx, static_cast<Real>(w.beta));
  if (w.kind == WeightKind::LogJacobi) {
    v *= p.omx < 0.5L ? std::log1p(-0.5L * p.omx) : std::log(0.5L * p.opx);
  }
  return v;
}

}  // namespace

OracleResult reference_integral(const WeightSpec& weight, const TestFunction& f) {
  validate(weight);
  if (f.kind != TestKind::Custom) require_kink(f.c, f.s);
  PointFn g;
  std::optional<Real> kink;
  switch (f.kind) {
    case TestKind::AbsPow: {
      const Real s = f.s;
      kink = f.c;
      g = [weight, s](const Located& p) { return weight_value(weight, p) * std::pow(std::abs(p.xmc), s); };
      break;
    }
    case TestKind::PowPlus: {
      const Real s = f.s;
      kink = f.c;
      g = [weight, s](const Located& p) {
        return p.xmc > 0 ? weight_value(weight, p) * std::pow(p.xmc, s) : 0.0L;
      };
      break;
    }
    case TestKind::Custom: {
      if (!f.custom) throw std::invalid_argument("custom test function has no callable");
      auto fn = f.custom;
      g = [weight, fn](const Located& p) { return weight_value(weight, p) * fn(static_cast<double>(p.x)); };
      break;
    }
  }
  return run_oracle(g, kink);
}

OracleResult reference_integral(const std::function<double(double)>& g) {
  return run_oracle([g](const Located& p) { return static_cast<Real>(g(static_cast<double>(p.x))); }, std::nullopt);
}

// ---------------------------------------------------------------------------
// Fits and studies

SlopeFit fit_slope(const std::vector<std::size_t>& ns, const std::vector<double>& errors,
                   std::pair<std::size_t, std::size_t> window) {
  if (ns.size() != errors.size()) throw std::invalid_argument("fit_slope: size mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < window.first || ns[i] > window.second) continue;
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) continue;
    xs.push_back(std::log(static_cast<double>(ns[i])));
    ys.push_back(std::log(errors[i]));
  }
  if (xs.size() < 5) throw std::invalid_argument("fit_slope: fewer than 5 usable points in the fit window");
  const auto cnt = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= cnt;
  my /= cnt;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: all abscissae are equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.count = xs.size();
  return fit;
}

QuadratureRule build_rule(Family family, std::size_t n, const WeightSpec& weight) {
  if (family == Family::GaussLegendre) {
    if (!weight.is_legendre()) throw std::invalid_argument("gauss-legendre supports only the weight jacobi:0:0");
    return gauss_legendre(n);
  }
  return build_weighted_rule(family, n, weight);
}

TheoreticalRate theoretical_rate(Family family, const WeightSpec& weight, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("smoothness s must be positive");
  TheoreticalRate r;
  if (family == Family::GaussLegendre) {
    if (!weight.is_legendre()) throw std::invalid_argument("gauss-legendre supports only the weight jacobi:0:0");
    if (std::abs(s - 1.0) <= 1e-12) {
      r = {-2.0, true, true};
    } else if (s < 1.0) {
      r = {-2.0 * s, false, true};
    } else {
      r = {-s - 1.0, false, false};
    }
    return r;
  }
  if (weight.kind == WeightKind::Jacobi) {
    const double mn = std::min(weight.alpha, weight.beta);
    r.slope = mn >= -0.5 - 1e-12 ? -s - 1.0 : -s - 2.0 - 2.0 * mn;
  } else if (weight.beta > -0.5 + 1e-12) {
    r.slope = -s - 1.0;
  } else {
    r.slope = -s - 2.0 - 2.0 * weight.beta;
    r.log_factor = true;
  }
  return r;
}

namespace {

void require_grid(const std::vector<std::size_t>& ns, std::size_t lo, std::size_t hi) {
  if (ns.empty()) throw std::invalid_argument("empty n grid");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < lo || ns[i] > hi) {
      throw std::invalid_argument("n = " + std::to_string(ns[i]) + " outside [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
    }
    if (i > 0 && ns[i] <= ns[i - 1]) throw std::invalid_argument("n grid must be strictly increasing");
  }
}

std::pair<std::size_t, std::size_t> default_window(const std::vector<std::size_t>& ns) {
  return {std::max<std::size_t>(100, ns.front()), ns.back()};
}

// Rules for every n of the grid, sharing one moment table.
template <class Visit>
void for_each_rule(Family family, const WeightSpec& weight, const std::vector<std::size_t>& ns, Visit visit) {
  if (family == Family::GaussLegendre) {
    if (!weight.is_legendre()) throw std::invalid_argument("gauss-legendre supports only the weight jacobi:0:0");
    for (auto n : ns) visit(n, gauss_legendre(n));
    return;
  }
  const auto table = modified_moments(weight, ns.back());
  for (auto n : ns) visit(n, build_weighted_rule(family, n, weight, table.values));
}

}  // namespace

ConvergenceReport convergence_study(Family family, const WeightSpec& weight, const TestFunction& f,
                                    const std::vector<std::size_t>& ns, const ConvergenceOptions& options) {
  require_grid(ns, 2, 5000);
  validate(weight);
  ConvergenceReport rep;
  rep.family = family;
  rep.weight = weight;
  rep.test = f;
  rep.ns = ns;
  rep.slope_tolerance = options.slope_tolerance;
  rep.fit_window = options.fit_window.value_or(default_window(ns));

  const auto rate = theoretical_rate(family, weight, f.s);
  rep.theoretical_slope = rate.slope;
  rep.log_factor = rate.log_factor;
  rep.one_sided = rate.one_sided;

  const auto oracle = reference_integral(weight, f);
  rep.reference = oracle.value;
  rep.reference_error = oracle.error_estimate;

  for_each_rule(family, weight, ns, [&](std::size_t, const QuadratureRule& rule) {
    rep.abs_errors.push_back(std::abs(oracle.value - chebquad::apply(rule, [&f](double x) { return f(x); })));
  });

  const double floor = options.noise_factor * oracle.error_estimate;
  std::vector<std::size_t> fit_ns;
  std::vector<double> fit_err;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const bool in_window = ns[i] >= rep.fit_window.first && ns[i] <= rep.fit_window.second;
    const double e = rep.abs_errors[i];
    const bool usable = in_window && e > floor && std::isfinite(e);
    rep.used_in_fit.push_back(usable);
    if (usable) {
      fit_ns.push_back(ns[i]);
      fit_err.push_back(rate.log_factor ? e / std::log(static_cast<double>(ns[i])) : e);
    }
  }
  if (fit_ns.size() < 5) {
    throw NumericalFailure("convergence_study: fewer than 5 usable points above the noise floor in the fit window");
  }
  const auto fit = fit_slope(fit_ns, fit_err, rep.fit_window);
  rep.fitted_slope = fit.slope;
  rep.r_squared = fit.r_squared;
  rep.pass = rate.one_sided ? rep.fitted_slope <= rep.theoretical_slope + rep.slope_tolerance
                            : std::abs(rep.fitted_slope - rep.theoretical_slope) <= rep.slope_tolerance;
  return rep;
}

std::vector<WeightSumRow> weight_sum_study(Family family, const WeightSpec& weight,
                                           const std::vector<std::size_t>& ns) {
  require_grid(ns, 2, 1u << 20);
  validate(weight);
  const double integral = std::abs(modified_moments(weight, 1).values[0]);
  std::vector<WeightSumRow> rows;
  for_each_rule(family, weight, ns, [&](std::size_t n, const QuadratureRule& rule) {
    const double sum = weight_abs_sum(rule);
    rows.push_back({n, sum, std::abs(sum - integral)});
  });
  return rows;
}

bool moments_vanish_eventually(const WeightSpec& weight) {
  const auto half_int = [](double v) { return std::abs(v - (std::floor(v) + 0.5)) <= 1e-12; };
  return weight.kind == WeightKind::Jacobi && half_int(weight.alpha) && half_int(weight.beta);
}

DecayFit moment_decay_fit(const WeightSpec& weight, std::size_t k_min, std::size_t k_max) {
  if (moments_vanish_eventually(weight)) {
    throw std::invalid_argument("moment_decay_fit: the moments vanish identically for this weight");
  }
  if (k_min < 2 || k_max <= k_min) throw std::invalid_argument("moment_decay_fit: need 2 <= k_min < k_max");
  const auto table = modified_moments(weight, k_max);
  const bool log_weight = weight.kind == WeightKind::LogJacobi;
  DecayFit out;
  out.log_divided = log_weight && !is_half(weight.beta);
  out.theoretical = log_weight ? -2.0 - 2.0 * weight.beta : -2.0 - 2.0 * minbar(weight.alpha, weight.beta);
  const double zero = 1e-15 * std::abs(table.values[0]);
  std::vector<std::size_t> ks;
  std::vector<double> mags;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    double v = std::abs(table.values[k]);
    if (v <= zero) continue;
    if (out.log_divided) v /= std::log(2.0 * static_cast<double>(k));
    ks.push_back(k);
    mags.push_back(v);
  }
  out.fit = fit_slope(ks, mags, {k_min, k_max});
  return out;
}

QuadratureRule gauss_jacobi(std::size_t n, double alpha, double beta) {
  if (n == 0) throw std::invalid_argument("gauss_jacobi: n must be positive");
  const auto weight = WeightSpec::jacobi(alpha, beta);
  validate(weight);
  const double ab = alpha + beta;
  // Recurrence coefficients of the monic Jacobi polynomials.
  std::vector<double> a(n + 1), b(n + 1, 0.0);
  a[0] = (beta - alpha) / (ab + 2.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double t = 2.0 * static_cast<double>(k) + ab;
    a[k] = (beta * beta - alpha * alpha) / (t * (t + 2.0));
    if (k == 1) {
      b[1] = std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    } else {
      const auto dk = static_cast<double>(k);
      b[k] = std::sqrt(4.0 * dk * (dk + alpha) * (dk + beta) * (dk + ab) / (t * t * (t + 1.0) * (t - 1.0)));
    }
  }
  Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 0);
  for (std::size_t k = 0; k < n; ++k) diag[static_cast<Eigen::Index>(k)] = a[k];
  for (std::size_t k = 1; k < n; ++k) sub[static_cast<Eigen::Index>(k - 1)] = b[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalFailure("gauss_jacobi: eigenvalue iteration failed");

  const double mu0 = special::beta(alpha + 1.0, beta + 1.0) * std::pow(2.0, ab + 1.0);
  QuadratureRule rule;
  rule.family = Family::GaussLegendre;
  rule.n = n;
  rule.weight = weight;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    double christoffel = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
      // orthonormal p_0..p_n and p_n'
      double p0 = 1.0 / std::sqrt(mu0), p1 = 0.0, d0 = 0.0, d1 = 0.0;
      christoffel = p0 * p0;
      for (std::size_t k = 0; k < n; ++k) {
        const double p2 = ((x - a[k]) * p0 - (k > 0 ? b[k] * p1 : 0.0)) / b[k + 1];
        const double d2 = (p0 + (x - a[k]) * d0 - (k > 0 ? b[k] * d1 : 0.0)) / b[k + 1];
        p1 = p0;
        p0 = p2;
        d1 = d0;
        d0 = d2;
        if (k + 1 < n) christoffel += p0 * p0;
      }
      if (pass == 0 && d0 != 0.0) x -= p0 / d0;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / christoffel;
  }
  return rule;
}

OpenProblemReport gauss_open_problem(const WeightSpec& weight, const TestFunction& f,
                                     const std::vector<std::size_t>& ns,
                                     std::optional<std::pair<std::size_t, std::size_t>> fit_window) {
  if (weight.kind != WeightKind::Jacobi) throw std::invalid_argument("gauss_open_problem: Jacobi weights only");
  require_grid(ns, 2, 5000);
  OpenProblemReport rep;
  rep.weight = weight;
  rep.test = f;
  rep.ns = ns;
  rep.reference_slope = theoretical_rate(Family::ClenshawCurtis, weight, f.s).slope;
  const auto oracle = reference_integral(weight, f);
  const auto fx = [&f](double x) { return f(x); };
  const auto wf = [&](double x) { return weight.at(x) * f(x); };
  for_each_rule(Family::ClenshawCurtis, weight, ns, [&](std::size_t n, const QuadratureRule& cc) {
    rep.cc_errors.push_back(std::abs(oracle.value - chebquad::apply(cc, fx)));
    rep.gauss_jacobi_errors.push_back(
        std::abs(oracle.value - chebquad::apply(gauss_jacobi(n, weight.alpha, weight.beta), fx)));
    rep.gauss_legendre_wf_errors.push_back(std::abs(oracle.value - chebquad::apply(gauss_legendre(n), wf)));
  });
  const auto window = fit_window.value_or(default_window(ns));
  const auto try_fit = [&](const std::vector<double>& e) -> std::optional<SlopeFit> {
    try {
      return fit_slope(ns, e, window);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  };
  rep.cc_fit = try_fit(rep.cc_errors);
  rep.gauss_jacobi_fit = try_fit(rep.gauss_jacobi_errors);
  rep.gauss_legendre_wf_fit = try_fit(rep.gauss_legendre_wf_errors);
  return rep;
}

SeriesCheck error_series_check(Family family, std::size_t n, const TestFunction& f, const WeightSpec& weight,
                               std::size_t truncation) {
  const auto oracle = reference_integral(weight, f);
  return error_series_check(family, n, Integrand{[f](double x) { return f(x); }, oracle.value}, weight,
                            truncation);
}

std::vector<std::size_t> geometric_grid(std::size_t lo, std::size_t hi, std::size_t count) {
  if (lo == 0 || hi < lo || count < 2) throw std::invalid_argument("geometric_grid: need 0 < lo <= hi, count >= 2");
  std::vector<std::size_t> out;
  const double ratio = static_cast<double>(hi) / static_cast<double>(lo);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    const auto v = static_cast<std::size_t>(std::llround(static_cast<double>(lo) * std::pow(ratio, t)));
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

}  // namespace chebquad
