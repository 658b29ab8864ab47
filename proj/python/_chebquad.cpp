#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>

#include "chebquad/aliasing.hpp"
#include "chebquad/analysis.hpp"
#include "chebquad/errors.hpp"
#include "chebquad/moments.hpp"
#include "chebquad/rules.hpp"

namespace py = pybind11;
using namespace chebquad;

namespace {

Family family_arg(const std::string& text) {
  const auto f = parse_family(text);
  if (!f) throw py::value_error("unknown family '" + text + "' (f1, f2, cc, gauss)");
  return *f;
}

WeightSpec weight_arg(const std::string& text) {
  const auto w = parse_weight(text);
  if (!w) throw py::value_error("bad weight '" + text + "' (jacobi:A:B or logjacobi:A:B)");
  validate(*w);
  return *w;
}

TestFunction test_arg(const std::string& text) {
  const auto f = parse_test_function(text);
  if (!f) throw py::value_error("bad test function '" + text + "' (abspow:C:S or powplus:XI:S)");
  return *f;
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::dict rule_dict(const QuadratureRule& r) {
  py::dict d;
  d["family"] = std::string(to_string(r.family));
  d["weight"] = to_string(r.weight);
  d["n"] = r.n;
  d["nodes"] = to_array(r.nodes);
  d["weights"] = to_array(r.weights);
  return d;
}

}  // namespace

PYBIND11_MODULE(_chebquad, m) {
  m.doc() = "Chebyshev-point and Gauss quadrature for Jacobi and log-Jacobi weights.";

  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

  m.def(
      "moments",
      [](const std::string& weight, std::size_t K) { return to_array(modified_moments(weight_arg(weight), K).values); },
      py::arg("weight"), py::arg("K"), "Modified moments int w T_k, k = 0..K.");

  m.def(
      "rule",
      [](const std::string& family, std::size_t n, const std::string& weight) {
        return rule_dict(build_rule(family_arg(family), n, weight_arg(weight)));
      },
      py::arg("family"), py::arg("n"), py::arg("weight") = "jacobi:0:0",
      "Nodes and weights as a dict with keys family, weight, n, nodes, weights.");

  m.def(
      "integrate",
      [](const std::string& family, std::size_t n, const std::string& weight, const std::function<double(double)>& f) {
        return chebquad::apply(build_rule(family_arg(family), n, weight_arg(weight)), f);
      },
      py::arg("family"), py::arg("n"), py::arg("weight"), py::arg("f"), "Applies the n-point rule to a callable.");

  m.def(
      "reference_integral",
      [](const std::string& weight, const std::string& f) {
        const auto r = reference_integral(weight_arg(weight), test_arg(f));
        return py::make_tuple(r.value, r.error_estimate);
      },
      py::arg("weight"), py::arg("f"), "Extended-precision int w f as (value, error_estimate).");

  m.def(
      "convergence_study",
      [](const std::string& family, const std::string& weight, const std::string& f, std::vector<std::size_t> ns,
         std::optional<std::pair<std::size_t, std::size_t>> fit_window, double slope_tolerance) {
        ConvergenceOptions opt;
        opt.fit_window = fit_window;
        opt.slope_tolerance = slope_tolerance;
        const auto r = convergence_study(family_arg(family), weight_arg(weight), test_arg(f), ns, opt);
        py::dict d;
        d["ns"] = r.ns;
        d["abs_errors"] = to_array(r.abs_errors);
        d["used_in_fit"] = std::vector<bool>(r.used_in_fit.begin(), r.used_in_fit.end());
        d["reference"] = r.reference;
        d["fitted_slope"] = r.fitted_slope;
        d["r_squared"] = r.r_squared;
        d["theoretical_slope"] = r.theoretical_slope;
        d["log_factor"] = r.log_factor;
        d["fit_window"] = r.fit_window;
        d["passed"] = r.pass;
        return d;
      },
      py::arg("family"), py::arg("weight"), py::arg("f"), py::arg("ns"), py::arg("fit_window") = py::none(),
      py::arg("slope_tolerance") = 0.2);

  m.def(
      "alias_table",
      [](const std::string& family, std::size_t n, const std::string& weight, const std::vector<std::size_t>& ms) {
        const auto fam = family_arg(family);
        const auto w = weight_arg(weight);
        if (fam == Family::GaussLegendre && !w.is_legendre()) throw py::value_error("gauss-legendre needs jacobi:0:0");
        const auto recs = fam == Family::GaussLegendre ? gauss_alias_table(n, ms) : alias_table(fam, n, w, ms);
        py::list out;
        for (const auto& r : recs) {
          py::dict d;
          d["m"] = r.m;
          d["p"] = r.reduction.p;
          d["j"] = r.reduction.j;
          d["sign"] = r.reduction.sign;
          d["form"] = std::string(to_string(r.reduction.form));
          d["computed"] = r.computed;
          d["predicted"] = r.predicted;
          d["residual"] = r.residual;
          d["leading_term"] = r.leading_term;
          out.append(d);
        }
        return out;
      },
      py::arg("family"), py::arg("n"), py::arg("weight"), py::arg("ms"));

  m.def(
      "weight_sums",
      [](const std::string& family, const std::string& weight, const std::vector<std::size_t>& ns) {
        py::list out;
        for (const auto& r : weight_sum_study(family_arg(family), weight_arg(weight), ns)) {
          out.append(py::make_tuple(r.n, r.abs_sum, r.deviation));
        }
        return out;
      },
      py::arg("family"), py::arg("weight"), py::arg("ns"), "List of (n, sum |w_j|, deviation).");

  m.def(
      "moment_decay_fit",
      [](const std::string& weight, std::size_t k_min, std::size_t k_max) {
        const auto d = moment_decay_fit(weight_arg(weight), k_min, k_max);
        return py::make_tuple(d.fit.slope, d.theoretical);
      },
      py::arg("weight"), py::arg("k_min") = 32, py::arg("k_max") = 4096, "(fitted, predicted) decay exponent.");

  m.def("minbar", &minbar, py::arg("alpha"), py::arg("beta"));
}
