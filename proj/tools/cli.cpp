#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "chebquad/aliasing.hpp"
#include "chebquad/analysis.hpp"
#include "chebquad/errors.hpp"
#include "chebquad/moments.hpp"
#include "chebquad/rules.hpp"

namespace chebquad::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Config {
  std::string family = "cc";
  std::string weight = "jacobi:0:0";
  std::string n;
  std::size_t K = 10;
  std::string f;
  std::string m;
  std::string out;
  std::string format = "csv";
  std::string fit_window;
  double slope_tol = 0.2;
};

std::size_t parse_count(std::string_view text, const char* what) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError(std::string("bad ") + what + ": '" + std::string(text) + "'");
  }
  return v;
}

// N | LO:HI | LO:HI:geomK
std::vector<std::size_t> parse_range(const std::string& text, const char* what) {
  if (text.empty()) throw UsageError(std::string("missing ") + what);
  std::vector<std::string_view> parts;
  std::string_view rest = text;
  for (;;) {
    const auto pos = rest.find(':');
    parts.push_back(rest.substr(0, pos));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  if (parts.size() == 1) return {parse_count(parts[0], what)};
  if (parts.size() > 3) throw UsageError(std::string("bad ") + what + ": '" + text + "'");
  const auto lo = parse_count(parts[0], what);
  const auto hi = parse_count(parts[1], what);
  if (lo > hi) throw UsageError(std::string(what) + ": LO must not exceed HI");
  if (parts.size() == 3) {
    if (parts[2].substr(0, 4) != "geom") throw UsageError(std::string("bad ") + what + " grid: '" + text + "'");
    const auto k = parse_count(parts[2].substr(4), what);
    if (k < 2) throw UsageError(std::string(what) + ": geomK needs K >= 2");
    return geometric_grid(std::max<std::size_t>(lo, 1), hi, k);
  }
  std::vector<std::size_t> v;
  for (auto i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

Family family_of(const Config& c) {
  const auto fam = parse_family(c.family);
  if (!fam) throw UsageError("unknown family '" + c.family + "' (f1, f2, cc, gauss)");
  return *fam;
}

WeightSpec weight_of(const Config& c) {
  const auto w = parse_weight(c.weight);
  if (!w) throw UsageError("bad weight '" + c.weight + "' (jacobi:A:B or logjacobi:A:B)");
  validate(*w);
  return *w;
}

TestFunction test_of(const Config& c) {
  if (c.f.empty()) throw UsageError("missing --f (abspow:C:S or powplus:XI:S)");
  const auto f = parse_test_function(c.f);
  if (!f) throw UsageError("bad test function '" + c.f + "' (abspow:C:S or powplus:XI:S)");
  if (!(f->c > -1.0 && f->c < 1.0) || !(f->s > 0.0)) throw UsageError("test function needs -1 < C < 1 and S > 0");
  return *f;
}

std::optional<std::pair<std::size_t, std::size_t>> window_of(const Config& c) {
  if (c.fit_window.empty()) return std::nullopt;
  const auto v = parse_range(c.fit_window, "--fit-window");
  if (v.size() < 2) throw UsageError("--fit-window takes LO:HI");
  return std::make_pair(v.front(), v.back());
}

void require_weight_for(Family fam, const WeightSpec& w) {
  if (fam == Family::GaussLegendre && !w.is_legendre()) {
    throw UsageError("gauss-legendre supports only --weight jacobi:0:0");
  }
}

void require_rule_sizes(Family fam, const std::vector<std::size_t>& ns) {
  const std::size_t lo = fam == Family::GaussLegendre ? 1 : 2;
  for (auto n : ns) {
    if (n < lo) throw UsageError("--n must be >= " + std::to_string(lo) + " for " + std::string(to_string(fam)));
  }
}

// A table of cells, printed as CSV (17 significant digits) or aligned text.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  Table& row() {
    rows_.emplace_back();
    return *this;
  }
  Table& add(const std::string& s) {
    rows_.back().push_back(s);
    return *this;
  }
  Table& add(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    rows_.back().emplace_back(buf);
    return *this;
  }
  Table& add(std::size_t v) { return add(std::to_string(v)); }
  Table& add(long v) { return add(std::to_string(v)); }
  Table& add(int v) { return add(std::to_string(v)); }
  Table& add(bool v) { return add(std::string(v ? "true" : "false")); }

  void print(std::ostream& os, bool csv) const {
    if (csv) {
      print_csv_row(os, header_);
      for (const auto& r : rows_) print_csv_row(os, r);
      return;
    }
    std::vector<std::size_t> width(header_.size(), 0);
    for (std::size_t i = 0; i < header_.size(); ++i) width[i] = header_[i].size();
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    print_text_row(os, header_, width);
    for (const auto& r : rows_) print_text_row(os, r, width);
  }

 private:
  static void print_csv_row(std::ostream& os, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
  static void print_text_row(std::ostream& os, const std::vector<std::string>& r,
                             const std::vector<std::size_t>& width) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << "  ";
      os << r[i];
      if (i + 1 < r.size()) os << std::string(width[i] - r[i].size(), ' ');
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

Table cmd_nodes(const Config& c, bool with_nodes) {
  const auto fam = family_of(c);
  const auto w = weight_of(c);
  require_weight_for(fam, w);
  const auto ns = parse_range(c.n, "--n");
  if (ns.size() != 1) throw UsageError("--n takes a single point count here");
  require_rule_sizes(fam, ns);
  const auto rule = build_rule(fam, ns[0], w);
  Table t(with_nodes ? std::vector<std::string>{"i", "node", "weight"}
                     : std::vector<std::string>{"i", "weight", "abs_weight"});
  for (std::size_t i = 0; i < rule.n; ++i) {
    t.row().add(i);
    if (with_nodes) {
      t.add(rule.nodes[i]).add(rule.weights[i]);
    } else {
      t.add(rule.weights[i]).add(std::abs(rule.weights[i]));
    }
  }
  return t;
}

Table cmd_moments(const Config& c) {
  const auto w = weight_of(c);
  if (c.K < 1) throw UsageError("--K must be >= 1");
  const auto table = modified_moments(w, c.K);
  Table t({"k", "moment"});
  for (std::size_t k = 0; k <= c.K; ++k) t.row().add(k).add(table.values[k]);
  return t;
}

Table cmd_integrate(const Config& c) {
  const auto fam = family_of(c);
  const auto w = weight_of(c);
  require_weight_for(fam, w);
  const auto f = test_of(c);
  const auto ns = parse_range(c.n, "--n");
  require_rule_sizes(fam, ns);
  const auto oracle = reference_integral(w, f);
  Table t({"family", "weight", "f", "n", "value", "reference", "abs_error"});
  for (auto n : ns) {
    const double v = chebquad::apply(build_rule(fam, n, w), [&f](double x) { return f(x); });
    t.row()
        .add(std::string(to_string(fam)))
        .add(to_string(w))
        .add(to_string(f))
        .add(n)
        .add(v)
        .add(oracle.value)
        .add(std::abs(oracle.value - v));
  }
  return t;
}

Table cmd_alias_table(const Config& c) {
  const auto fam = family_of(c);
  const auto w = weight_of(c);
  require_weight_for(fam, w);
  const auto ns = parse_range(c.n, "--n");
  if (ns.size() != 1) throw UsageError("--n takes a single point count here");
  require_rule_sizes(fam, ns);
  if (c.m.empty()) throw UsageError("missing --m (M or LO:HI)");
  const auto ms = parse_range(c.m, "--m");
  const auto records = fam == Family::GaussLegendre ? gauss_alias_table(ns[0], ms) : alias_table(fam, ns[0], w, ms);
  Table t({"family", "weight", "n", "m", "p", "j", "sign", "form", "computed", "predicted", "residual",
           "leading_term"});
  for (const auto& r : records) {
    t.row()
        .add(std::string(to_string(r.family)))
        .add(to_string(w))
        .add(r.n)
        .add(r.m)
        .add(r.reduction.p)
        .add(r.reduction.j)
        .add(r.reduction.sign)
        .add(std::string(to_string(r.reduction.form)))
        .add(r.computed)
        .add(r.predicted)
        .add(r.residual)
        .add(r.leading_term);
  }
  return t;
}

Table cmd_convergence(const Config& c, bool& pass) {
  const auto fam = family_of(c);
  const auto w = weight_of(c);
  require_weight_for(fam, w);
  const auto f = test_of(c);
  const auto ns = parse_range(c.n, "--n");
  require_rule_sizes(fam, ns);
  if (ns.back() > 5000) throw UsageError("--n must not exceed 5000");
  if (!(c.slope_tol > 0.0)) throw UsageError("--slope-tol must be positive");
  ConvergenceOptions opt;
  opt.fit_window = window_of(c);
  opt.slope_tolerance = c.slope_tol;
  const auto rep = convergence_study(fam, w, f, ns, opt);
  pass = rep.pass;
  Table t({"family", "weight", "f", "n", "abs_error", "used_in_fit", "fitted_slope", "theoretical_slope",
           "log_factor", "r_squared", "pass"});
  for (std::size_t i = 0; i < rep.ns.size(); ++i) {
    t.row()
        .add(std::string(to_string(fam)))
        .add(to_string(w))
        .add(to_string(f))
        .add(rep.ns[i])
        .add(rep.abs_errors[i])
        .add(static_cast<bool>(rep.used_in_fit[i]))
        .add(rep.fitted_slope)
        .add(rep.theoretical_slope)
        .add(rep.log_factor)
        .add(rep.r_squared)
        .add(rep.pass);
  }
  return t;
}

Table cmd_weight_sums(const Config& c) {
  const auto fam = family_of(c);
  const auto w = weight_of(c);
  require_weight_for(fam, w);
  const auto ns = parse_range(c.n, "--n");
  require_rule_sizes(fam, ns);
  const double integral = std::abs(modified_moments(w, 1).values[0]);
  Table t({"family", "weight", "n", "abs_weight_sum", "abs_weight_integral", "deviation"});
  for (const auto& r : weight_sum_study(fam, w, ns)) {
    t.row().add(std::string(to_string(fam))).add(to_string(w)).add(r.n).add(r.abs_sum).add(integral).add(
        r.deviation);
  }
  return t;
}

Table cmd_open_problem(const Config& c) {
  const auto w = weight_of(c);
  if (w.kind != WeightKind::Jacobi) throw UsageError("gauss-open-problem takes a jacobi weight");
  const auto f = test_of(c);
  const auto ns = parse_range(c.n, "--n");
  require_rule_sizes(Family::ClenshawCurtis, ns);
  if (ns.back() > 5000) throw UsageError("--n must not exceed 5000");
  const auto rep = gauss_open_problem(w, f, ns, window_of(c));
  const auto slope = [](const std::optional<SlopeFit>& fit) {
    return fit ? fit->slope : std::numeric_limits<double>::quiet_NaN();
  };
  Table t({"weight", "f", "n", "cc_error", "gauss_jacobi_error", "gauss_legendre_wf_error", "cc_slope",
           "gauss_jacobi_slope", "gauss_legendre_wf_slope", "reference_slope"});
  for (std::size_t i = 0; i < rep.ns.size(); ++i) {
    t.row()
        .add(to_string(w))
        .add(to_string(f))
        .add(rep.ns[i])
        .add(rep.cc_errors[i])
        .add(rep.gauss_jacobi_errors[i])
        .add(rep.gauss_legendre_wf_errors[i])
        .add(slope(rep.cc_fit))
        .add(slope(rep.gauss_jacobi_fit))
        .add(slope(rep.gauss_legendre_wf_fit))
        .add(rep.reference_slope);
  }
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chebyshev-point and Gauss quadrature for Jacobi and log-Jacobi weights", "quad"};
  app.require_subcommand(1);
  Config cfg;

  const auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "f1 | f2 | cc | gauss")->capture_default_str();
  };
  const auto add_weight = [&](CLI::App* sub) {
    sub->add_option("--weight", cfg.weight, "jacobi:A:B | logjacobi:A:B")->capture_default_str();
  };
  const auto add_n = [&](CLI::App* sub, const char* help) { sub->add_option("--n", cfg.n, help)->required(); };
  const auto add_f = [&](CLI::App* sub) {
    sub->add_option("--f", cfg.f, "abspow:C:S (|x-C|^S) | powplus:XI:S ((x-XI)_+^S)")->required();
  };
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "write to PATH instead of stdout");
    sub->add_option("--format", cfg.format, "csv | table")
        ->check(CLI::IsMember({"csv", "table"}))
        ->capture_default_str();
  };

  auto* nodes = app.add_subcommand("nodes", "nodes and weights of one rule");
  add_family(nodes);
  add_weight(nodes);
  add_n(nodes, "point count N");
  add_output(nodes);

  auto* weights = app.add_subcommand("weights", "weights of one rule");
  add_family(weights);
  add_weight(weights);
  add_n(weights, "point count N");
  add_output(weights);

  auto* moments = app.add_subcommand("moments", "modified moments k = 0..K");
  add_weight(moments);
  moments->add_option("--K", cfg.K, "largest index")->capture_default_str();
  add_output(moments);

  auto* integrate = app.add_subcommand("integrate", "apply rules to a test function");
  add_family(integrate);
  add_weight(integrate);
  add_n(integrate, "N | LO:HI | LO:HI:geomK");
  add_f(integrate);
  add_output(integrate);

  auto* alias = app.add_subcommand("alias-table", "aliasing errors E_n[T_m]");
  add_family(alias);
  add_weight(alias);
  add_n(alias, "point count N");
  alias->add_option("--m", cfg.m, "M | LO:HI")->required();
  add_output(alias);

  auto* conv = app.add_subcommand("convergence", "error sweep over n with a fitted log-log slope");
  add_family(conv);
  add_weight(conv);
  add_n(conv, "N | LO:HI | LO:HI:geomK");
  add_f(conv);
  conv->add_option("--fit-window", cfg.fit_window, "LO:HI (default max(100, n_min):n_max)");
  conv->add_option("--slope-tol", cfg.slope_tol, "slope tolerance")->capture_default_str();
  add_output(conv);

  auto* sums = app.add_subcommand("weight-sums", "sum of |w_j| against the integral of |w|");
  add_family(sums);
  add_weight(sums);
  add_n(sums, "N | LO:HI | LO:HI:geomK");
  add_output(sums);

  auto* open = app.add_subcommand("gauss-open-problem", "Gauss versus Clenshaw-Curtis on a Jacobi weight");
  add_weight(open);
  add_n(open, "N | LO:HI | LO:HI:geomK");
  add_f(open);
  open->add_option("--fit-window", cfg.fit_window, "LO:HI (default max(100, n_min):n_max)");
  add_output(open);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "quad: " << e.what() << "\n";
    return kUsage;
  }

  try {
    bool pass = true;
    Table table({});
    if (nodes->parsed()) {
      table = cmd_nodes(cfg, true);
    } else if (weights->parsed()) {
      table = cmd_nodes(cfg, false);
    } else if (moments->parsed()) {
      table = cmd_moments(cfg);
    } else if (integrate->parsed()) {
      table = cmd_integrate(cfg);
    } else if (alias->parsed()) {
      table = cmd_alias_table(cfg);
    } else if (conv->parsed()) {
      table = cmd_convergence(cfg, pass);
    } else if (sums->parsed()) {
      table = cmd_weight_sums(cfg);
    } else if (open->parsed()) {
      table = cmd_open_problem(cfg);
    }

    const bool csv = cfg.format == "csv";
    if (cfg.out.empty()) {
      table.print(out, csv);
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) {
        err << "quad: cannot open '" << cfg.out << "' for writing\n";
        return kUsage;
      }
      table.print(file, csv);
    }
    if (!pass) {
      err << "quad: fitted slope outside the tolerance of the predicted rate\n";
      return kConvergenceFailed;
    }
    return kOk;
  } catch (const NumericalFailure& e) {
    err << "quad: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "quad: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "quad: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace chebquad::cli
