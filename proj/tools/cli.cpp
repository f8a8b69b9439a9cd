#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "cinf/errors.hpp"
#include "cinf/expr_text.hpp"
#include "cinf/laws.hpp"
#include "cinf/smooth.hpp"
#include "cinf/sym.hpp"

namespace cinf::cli {

namespace {

// Flags shared by the operator subcommands.
struct Common {
  std::size_t dim = 0;  // 0: one past the largest variable mentioned
  std::string mode = "smooth";
  QuadConfig quad;
};

void add_dim(CLI::App* app, Common& c) {
  app->add_option("-n,--dim", c.dim, "Ambient dimension (default: inferred from the input)");
}

void add_mode(CLI::App* app, std::string& mode) {
  app->add_option("--mode", mode, "poly (exact rationals) or smooth (floating point)")
      ->transform(CLI::Transformer(std::map<std::string, std::string>{{"poly-exact", "poly"},
                                                                       {"smooth-numeric", "smooth"}}))
      ->check(CLI::IsMember({"poly", "smooth"}));
}

void add_quad(CLI::App* app, QuadConfig& q) {
  app->add_option("--quad-order", q.order, "Gauss-Legendre points per panel")->capture_default_str();
  app->add_option("--quad-depth", q.max_depth, "Maximum bisection depth")->capture_default_str();
  app->add_option("--quad-atol", q.abs_tol, "Absolute quadrature tolerance")->capture_default_str();
  app->add_option("--quad-rtol", q.rel_tol, "Relative quadrature tolerance")->capture_default_str();
}

void add_common(CLI::App* app, Common& c) {
  add_dim(app, c);
  add_mode(app, c.mode);
  add_quad(app, c.quad);
}

std::size_t mentioned_dimension(const std::string& text) {
  static const std::regex var(R"((^|[^A-Za-z0-9_])x([0-9]+))");
  std::size_t out = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it) {
    out = std::max<std::size_t>(out, std::stoul((*it)[2].str()));
  }
  return out;
}

std::size_t dimension_for(const Common& c, std::initializer_list<const std::string*> inputs) {
  if (c.dim != 0) return c.dim;
  std::size_t n = 1;
  for (const std::string* s : inputs) {
    if (s != nullptr) n = std::max(n, mentioned_dimension(*s));
  }
  return n;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const Expr& e : parse_expr_list(text, 0)) out.push_back(evaluate(e, std::span<const double>{}));
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const Poly& p : parse_poly_list(text, 0)) out.push_back(p.constant_term());
  return out;
}

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + " has " + std::to_string(got) + " entries, expected " +
                         std::to_string(want));
  }
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out;
}

std::string format_reals(std::span<const double> v) {
  std::vector<std::string> parts;
  for (double x : v) parts.push_back(format_double(x));
  return join(parts);
}

std::string format_rationals(std::span<const Rational> v) {
  std::vector<std::string> parts;
  for (const Rational& x : v) parts.push_back(x.get_str());
  return join(parts);
}

// Exact cross-partial comparison; returns the first asymmetric pair.
std::optional<std::pair<std::size_t, std::size_t>> poly_asymmetry(const sym::PolyOneForm& w) {
  for (std::size_t i = 0; i < w.dimension(); ++i)
    for (std::size_t j = i + 1; j < w.dimension(); ++j) {
      if (!(partial(w[i], j) == partial(w[j], i))) return std::make_pair(i, j);
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

struct DiffArgs {
  Common common;
  std::string input;
  std::size_t var = 0;
};

int cmd_diff(const DiffArgs& a, std::ostream& out) {
  const std::size_t n = dimension_for(a.common, {&a.input});
  if (a.var > n) throw IndexError("--var " + std::to_string(a.var) + " exceeds dimension " + std::to_string(n));
  if (a.common.mode == "poly") {
    const Poly p = parse_poly(a.input, n);
    out << (a.var ? to_string(partial(p, a.var - 1)) : sym::to_string(sym::differential(p))) << '\n';
  } else {
    const Expr f = parse_expr(a.input, n);
    out << (a.var ? to_string(partial(f, a.var - 1, n)) : smooth::to_string(smooth::differential(f, n))) << '\n';
  }
  return kOk;
}

struct GradArgs {
  Common common;
  std::string input;
  std::string at;
};

int cmd_grad(const GradArgs& a, std::ostream& out) {
  const std::size_t n = dimension_for(a.common, {&a.input});
  if (a.common.mode == "poly") {
    const auto point = parse_rationals(a.at);
    require_length(point.size(), n, "--at");
    const auto dp = sym::differential(parse_poly(a.input, n));
    std::vector<Rational> g;
    for (const Poly& c : dp.components()) g.push_back(evaluate(c, point));
    out << format_rationals(g) << '\n';
  } else {
    const auto point = parse_reals(a.at);
    require_length(point.size(), n, "--at");
    const auto df = smooth::differential(parse_expr(a.input, n), n);
    std::vector<double> g;
    for (const Expr& c : df.components()) g.push_back(evaluate(c, point, a.common.quad));
    out << format_reals(g) << '\n';
  }
  return kOk;
}

struct FormArgs {
  Common common;
  std::string input;
  std::string at;
  std::size_t points = 25;
  double tol = 1e-9;
  std::uint64_t seed = 0x5eed;
};

void print_value_at(const Expr& e, const std::string& at, std::size_t n, const QuadConfig& q, std::ostream& out) {
  const auto point = parse_reals(at);
  require_length(point.size(), n, "--at");
  out << format_double(evaluate(e, point, q)) << '\n';
}

void print_value_at(const Poly& p, const std::string& at, std::size_t n, std::ostream& out) {
  const auto point = parse_rationals(at);
  require_length(point.size(), n, "--at");
  out << evaluate(p, point).get_str() << '\n';
}

int cmd_lineint(const FormArgs& a, std::ostream& out) {
  const std::size_t n = dimension_for(a.common, {&a.input});
  if (a.common.mode == "poly") {
    auto comps = parse_poly_list(a.input, n);
    require_length(comps.size(), n, "1-form");
    const Poly s = sym::integral(sym::PolyOneForm(std::move(comps)));
    if (a.at.empty()) out << to_string(s) << '\n';
    else print_value_at(s, a.at, n, out);
  } else {
    auto comps = parse_expr_list(a.input, n);
    require_length(comps.size(), n, "1-form");
    const Expr s = smooth::line_integral(smooth::SmoothOneForm(std::move(comps)));
    if (a.at.empty()) out << to_string(s) << '\n';
    else print_value_at(s, a.at, n, a.common.quad, out);
  }
  return kOk;
}

int cmd_closed(const FormArgs& a, std::ostream& out) {
  const std::size_t n = dimension_for(a.common, {&a.input});
  if (a.common.mode == "poly") {
    auto comps = parse_poly_list(a.input, n);
    require_length(comps.size(), n, "1-form");
    const auto bad = poly_asymmetry(sym::PolyOneForm(std::move(comps)));
    if (!bad) {
      out << "closed\n";
      return kOk;
    }
    out << "not closed: d w" << bad->first + 1 << "/dx" << bad->second + 1 << " != d w" << bad->second + 1
        << "/dx" << bad->first + 1 << '\n';
    return kLawFailure;
  }
  auto comps = parse_expr_list(a.input, n);
  require_length(comps.size(), n, "1-form");
  const auto r = smooth::is_closed(smooth::SmoothOneForm(std::move(comps)), a.points, a.tol, a.common.quad, a.seed);
  out << (r.closed ? "closed" : "not closed") << " (worst asymmetry " << format_double(r.worst_asymmetry) << ")\n";
  return r.closed ? kOk : kLawFailure;
}

int cmd_potential(const FormArgs& a, std::ostream& out) {
  const std::size_t n = dimension_for(a.common, {&a.input});
  if (a.common.mode == "poly") {
    auto comps = parse_poly_list(a.input, n);
    require_length(comps.size(), n, "1-form");
    const sym::PolyOneForm w(std::move(comps));
    if (const auto bad = poly_asymmetry(w)) {
      out << "not closed: d w" << bad->first + 1 << "/dx" << bad->second + 1 << " != d w" << bad->second + 1
          << "/dx" << bad->first + 1 << '\n';
      return kLawFailure;
    }
    const Poly s = sym::integral(w);
    out << to_string(s) << '\n';
    const bool ok = sym::differential(s) == w;
    out << "# d(potential) = input: " << (ok ? "exact" : "MISMATCH") << '\n';
    return ok ? kOk : kLawFailure;
  }
  auto comps = parse_expr_list(a.input, n);
  require_length(comps.size(), n, "1-form");
  const smooth::SmoothOneForm w(std::move(comps));
  const auto closed = smooth::is_closed(w, a.points, a.tol, a.common.quad, a.seed);
  if (!closed.closed) {
    out << "not closed (worst asymmetry " << format_double(closed.worst_asymmetry) << ")\n";
    return kLawFailure;
  }
  const Expr s = smooth::line_integral(w);
  out << to_string(s) << '\n';
  Rng rng(a.seed);
  std::vector<std::vector<double>> pts;
  for (std::size_t k = 0; k < a.points; ++k) pts.push_back(gen_point(rng, n));
  const auto ds = smooth::differential(s, n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, laws::pointwise_equal(ds[i], w[i], pts, a.tol, a.common.quad).max_abs);
  }
  const bool ok = worst <= std::max(a.tol, 1e-7);
  out << "# d(potential) = input at " << a.points << " points, max deviation " << format_double(worst) << '\n';
  return ok ? kOk : kLawFailure;
}

struct ApplyArgs {
  Common common;
  std::string op;
  std::string input;
  std::string at;
};

int cmd_apply(const ApplyArgs& a, std::ostream& out) {
  const std::size_t n = dimension_for(a.common, {&a.input});
  auto degree = [](const std::string& op) {
    if (op == "L") return DegreeOp::L;
    if (op == "K" || op == "Kinv") return DegreeOp::K;
    return DegreeOp::J;
  };
  const bool inverse = a.op == "Kinv" || a.op == "Jinv";

  if (a.common.mode == "poly") {
    if (a.op == "counit") {
      out << parse_poly(a.input, n).constant_term().get_str() << '\n';
      return kOk;
    }
    if (a.op == "epsilon") {
      const auto d = sym::differential(parse_poly(a.input, n));
      std::vector<Rational> e;
      const std::vector<Rational> zero(n, Rational(0));
      for (const Poly& c : d.components()) e.push_back(evaluate(c, zero));
      out << format_rationals(e) << '\n';
      return kOk;
    }
    Poly r(n);
    if (a.op == "dcirc") {
      auto comps = parse_poly_list(a.input, n);
      require_length(comps.size(), n, "1-form");
      r = sym::coderiving(sym::PolyOneForm(std::move(comps)));
    } else {
      const Poly p = parse_poly(a.input, n);
      r = inverse ? sym::degree_op_inverse(degree(a.op), p) : sym::degree_op(degree(a.op), p);
    }
    if (a.at.empty()) out << to_string(r) << '\n';
    else print_value_at(r, a.at, n, out);
    return kOk;
  }

  const auto& q = a.common.quad;
  if (a.op == "counit") {
    out << format_double(smooth::counit(parse_expr(a.input, n), n, q)) << '\n';
    return kOk;
  }
  if (a.op == "epsilon") {
    out << format_reals(smooth::epsilon(parse_expr(a.input, n), n, q)) << '\n';
    return kOk;
  }
  Expr r;
  if (a.op == "dcirc") {
    auto comps = parse_expr_list(a.input, n);
    require_length(comps.size(), n, "1-form");
    r = smooth::coderiving(smooth::SmoothOneForm(std::move(comps)));
  } else {
    const Expr f = parse_expr(a.input, n);
    r = inverse ? smooth::degree_op_inverse(degree(a.op), f, n, q) : smooth::degree_op(degree(a.op), f, n, q);
  }
  if (a.at.empty()) out << to_string(r) << '\n';
  else print_value_at(r, a.at, n, q, out);
  return kOk;
}

struct RotaBaxterArgs {
  Common common;
  std::string input;
  std::string v;
  std::string with;
  std::string at;
};

int cmd_rota_baxter(const RotaBaxterArgs& a, std::ostream& out) {
  const std::size_t n = dimension_for(a.common, {&a.input, &a.with});
  if (a.common.mode == "poly") {
    const auto v = a.v.empty() ? std::vector<Rational>(n, Rational(1)) : parse_rationals(a.v);
    require_length(v.size(), n, "--v");
    const Poly f = parse_poly(a.input, n);
    const Poly r = a.with.empty() ? sym::rota_baxter(f, v) : sym::double_product(f, parse_poly(a.with, n), v);
    if (a.at.empty()) out << to_string(r) << '\n';
    else print_value_at(r, a.at, n, out);
    return kOk;
  }
  const auto v = a.v.empty() ? std::vector<double>(n, 1.0) : parse_reals(a.v);
  require_length(v.size(), n, "--v");
  const Expr f = parse_expr(a.input, n);
  const Expr r = a.with.empty() ? smooth::rota_baxter(f, v) : smooth::double_product(f, parse_expr(a.with, n), v);
  if (a.at.empty()) out << to_string(r) << '\n';
  else print_value_at(r, a.at, n, a.common.quad, out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string suite = "all";
  std::string mode;  // empty: both
  std::uint64_t seed = 42;
  std::size_t trials = 0;
  double tol = 0.0;
  std::size_t points = 10;
  std::size_t dim = 0;
  unsigned depth = 5;
  unsigned degree = 6;
  unsigned threads = 0;
  QuadConfig quad;
  std::string format = "text";
  bool timing = false;
  bool naive = false;
  bool verbose = false;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  std::vector<laws::Suite> suites;
  if (a.suite == "all") suites.assign(laws::all_suites().begin(), laws::all_suites().end());
  else suites.push_back(laws::parse_suite(a.suite));
  std::vector<laws::Mode> modes;
  if (a.mode.empty() || a.mode == "poly") modes.push_back(laws::Mode::Poly);
  if (a.mode.empty() || a.mode == "smooth") modes.push_back(laws::Mode::Smooth);
  if (a.naive && modes != std::vector{laws::Mode::Poly}) {
    throw std::invalid_argument("--naive-integral replaces the polynomial integral and needs --mode poly");
  }

  laws::TrialConfig trial;
  trial.seed = a.seed;
  if (a.trials) trial.trials = a.trials;
  if (a.tol > 0.0) trial.tolerance = a.tol;
  trial.points = a.points;
  trial.quad = a.quad;
  trial.threads = a.threads;
  GenConfig gen;
  if (a.dim) gen.min_dimension = gen.max_dimension = a.dim;
  gen.max_depth = a.depth;
  gen.max_degree = a.degree;
  laws::SuiteOptions options;
  if (a.naive) options.poly_integral = laws::naive_integral;

  std::vector<laws::LawReport> reports;
  for (laws::Mode mode : modes) {
    for (laws::Suite suite : suites) {
      if (!laws::supports(suite, mode)) {
        if (suites.size() == 1) {
          throw std::invalid_argument("suite '" + a.suite + "' has no " + std::string(laws::to_string(mode)) + " form");
        }
        continue;
      }
      reports.push_back(laws::run_suite(suite, mode, trial, gen, options));
      if (!a.timing) reports.back().elapsed_ms = 0;
    }
  }

  bool failed = false;
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.failures) failed = true;
    else if (!r.passed()) inconclusive = true;
  }

  if (a.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      arr.push_back({{"law", r.law},
                     {"mode", std::string(laws::to_string(r.mode))},
                     {"seed", r.seed},
                     {"trials", r.trials},
                     {"failures", r.failures},
                     {"inconclusive", r.inconclusive},
                     {"worst_error", r.worst_error},
                     {"elapsed_ms", r.elapsed_ms}});
    }
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      out << (r.passed() ? "PASS" : "FAIL") << "  " << r.law << " [" << laws::to_string(r.mode) << "]"
          << " trials=" << r.trials << " failures=" << r.failures << " inconclusive=" << r.inconclusive
          << " worst_error=" << format_double(r.worst_error) << " seed=" << r.seed;
      if (a.timing) out << " elapsed_ms=" << r.elapsed_ms;
      out << '\n';
      if (a.verbose || !r.passed()) {
        for (const auto& c : r.counterexamples) out << "  counterexample " << c << '\n';
      }
    }
  }
  if (failed) return kLawFailure;
  return inconclusive ? kNonConvergence : kOk;
}

// ---------------------------------------------------------------------------

struct DemoCase {
  std::string name;
  std::string expected;
  std::string computed;
  bool ok;
};

int cmd_demo(std::ostream& out) {
  std::vector<DemoCase> cases;
  const auto exact = [&](std::string name, std::string expected, std::string computed) {
    const bool ok = expected == computed;
    cases.push_back({std::move(name), std::move(expected), std::move(computed), ok});
  };

  // Gradient of a monomial: Σ n_i x^(α - e_i) dx_i.
  exact("d(x1^3*x2^2*x3)", "3*x1^2*x2^2*x3, 2*x1^3*x2*x3, x1^3*x2^2",
        sym::to_string(sym::differential(parse_poly("x1^3*x2^2*x3", 3))));
  exact("K(x1^2*x2) scales degree 3 by 3", "3*x1^2*x2",
        to_string(sym::degree_op(DegreeOp::K, parse_poly("x1^2*x2", 2))));
  exact("K(5) fixes constants", "5", to_string(sym::degree_op(DegreeOp::K, parse_poly("5", 2))));
  exact("J(x1^2*x2) scales degree 3 by 4", "4*x1^2*x2",
        to_string(sym::degree_op(DegreeOp::J, parse_poly("x1^2*x2", 2))));

  const auto form = parse_poly_list("x1^2*x2^5, x1^3", 2);
  const Poly s = sym::integral(sym::PolyOneForm(form));
  exact("s(x1^2*x2^5 dx1 + x1^3 dx2), exact", "1/8*x1^3*x2^5 + 1/4*x1^3*x2", to_string(s));

  {
    std::vector<Expr> comps;
    for (const Poly& p : form) comps.push_back(from_poly(p));
    const Expr smooth_s = smooth::line_integral(smooth::SmoothOneForm(std::move(comps)));
    Rng rng(2024);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto v = gen_point(rng, 2);
      worst = std::max(worst, std::abs(evaluate(smooth_s, v) - evaluate(s, std::span<const double>(v))));
    }
    cases.push_back({"smooth s of the same form at 20 points", "|deviation| <= 1e-9",
                     "max deviation " + format_double(worst), worst <= 1e-9});
  }
  {
    const Expr p1cos = smooth::rota_baxter(parse_expr("cos(x1)", 1), std::vector<double>{1.0});
    double worst = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double x = -2.0 + 0.4 * k;
      worst = std::max(worst, std::abs(evaluate(p1cos, std::vector<double>{x}) - std::sin(x)));
    }
    cases.push_back({"P_1(cos) = sin on [-2, 2]", "|deviation| <= 1e-9", "max deviation " + format_double(worst),
                     worst <= 1e-9});
  }
  {
    // P(1)P(1) against P(P(1)) + P(P(1)) with v = (1, 1).
    const std::vector<Rational> v{Rational(1), Rational(1)};
    auto naive_p = [&](const Poly& p) {
      return laws::naive_integral(sym::PolyOneForm(std::vector<Poly>{v[0] * p, v[1] * p}));
    };
    const Poly one = Poly::constant(2, 1);
    const Poly lhs = naive_p(one) * naive_p(one);
    const Poly rhs = naive_p(naive_p(one)) + naive_p(naive_p(one));
    cases.push_back({"per-variable rule breaks Rota-Baxter in 2 variables", "P(1)P(1) != 2P(P(1))",
                     to_string(lhs) + " vs " + to_string(rhs), !(lhs == rhs)});
  }

  bool all = true;
  for (const auto& c : cases) {
    out << (c.ok ? "ok   " : "FAIL ") << c.name << "\n       expected: " << c.expected
        << "\n       computed: " << c.computed << '\n';
    all = all && c.ok;
  }
  return all ? kOk : kLawFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential and integral operators on polynomial and smooth functions"};
  app.require_subcommand(1);

  DiffArgs diff;
  auto* diff_cmd = app.add_subcommand("diff", "Gradient 1-form of a function");
  add_common(diff_cmd, diff.common);
  diff_cmd->add_option("--var", diff.var, "Only the partial in this (1-based) variable");
  diff_cmd->add_option("expr", diff.input, "Function")->required();

  GradArgs grad;
  auto* grad_cmd = app.add_subcommand("grad", "Gradient evaluated at a point");
  add_common(grad_cmd, grad.common);
  grad_cmd->add_option("--at", grad.at, "Point, comma-separated")->required();
  grad_cmd->add_option("expr", grad.input, "Function")->required();

  FormArgs lineint;
  auto* lineint_cmd = app.add_subcommand("lineint", "Integral transformation: line integral from the origin");
  add_common(lineint_cmd, lineint.common);
  lineint_cmd->add_option("--at", lineint.at, "Evaluate at this point");
  lineint_cmd->add_option("form", lineint.input, "1-form as comma-separated components")->required();

  ApplyArgs apply;
  auto* apply_cmd = app.add_subcommand("apply", "Apply a named operator");
  add_common(apply_cmd, apply.common);
  apply_cmd->add_option("--op", apply.op, "Operator")
      ->required()
      ->check(CLI::IsMember({"L", "K", "J", "Kinv", "Jinv", "dcirc", "counit", "epsilon"}));
  apply_cmd->add_option("--at", apply.at, "Evaluate the result at this point");
  apply_cmd->add_option("input", apply.input, "Function, or 1-form for dcirc")->required();

  GradArgs eps;
  auto* eps_cmd = app.add_subcommand("epsilon", "Gradient at the origin");
  add_common(eps_cmd, eps.common);
  eps_cmd->add_option("expr", eps.input, "Function")->required();

  FormArgs closed;
  auto* closed_cmd = app.add_subcommand("closed", "Test whether a 1-form is closed");
  FormArgs potential;
  auto* potential_cmd = app.add_subcommand("potential", "Potential of a closed 1-form, with verification");
  for (auto [cmd, args] : {std::pair{closed_cmd, &closed}, std::pair{potential_cmd, &potential}}) {
    add_common(cmd, args->common);
    cmd->add_option("--points", args->points, "Sample points")->capture_default_str();
    cmd->add_option("--tol", args->tol, "Tolerance")->capture_default_str();
    cmd->add_option("--seed", args->seed, "Sampling seed")->capture_default_str();
    cmd->add_option("form", args->input, "1-form as comma-separated components")->required();
  }

  RotaBaxterArgs rb;
  auto* rb_cmd = app.add_subcommand("rota-baxter", "Rota-Baxter operator P_v, or the double product");
  add_common(rb_cmd, rb.common);
  rb_cmd->add_option("--v", rb.v, "Direction vector (default all ones)");
  rb_cmd->add_option("--double", rb.with, "Second factor: print f * g = f P(g) + P(f) g");
  rb_cmd->add_option("--at", rb.at, "Evaluate at this point");
  rb_cmd->add_option("expr", rb.input, "Function")->required();

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Run law suites");
  check_cmd->add_option("--suite", check.suite, "Suite id or 'all'")->capture_default_str();
  add_mode(check_cmd, check.mode);
  check_cmd->add_option("-n,--dim", check.dim, "Fix the dimension (default: random in 1..3)");
  check_cmd->add_option("--seed", check.seed, "Base seed")->capture_default_str();
  check_cmd->add_option("--trials", check.trials, "Trials per suite (default: per suite)");
  check_cmd->add_option("--tol", check.tol, "Tolerance for every smooth identity (default: per identity)");
  check_cmd->add_option("--points", check.points, "Evaluation points per smooth trial")->capture_default_str();
  check_cmd->add_option("--depth", check.depth, "Maximum expression depth")->capture_default_str();
  check_cmd->add_option("--degree", check.degree, "Maximum polynomial degree")->capture_default_str();
  check_cmd->add_option("--threads", check.threads, "Worker threads (default: all cores)");
  add_quad(check_cmd, check.quad);
  check_cmd->add_option("--format", check.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  check_cmd->add_flag("--timing", check.timing, "Report elapsed_ms (otherwise 0, keeping output reproducible)");
  check_cmd->add_flag("--naive-integral", check.naive, "Replace the polynomial integral by the per-variable rule");
  check_cmd->add_flag("-v,--verbose", check.verbose, "Print counterexamples of passing suites too");

  auto* demo_cmd = app.add_subcommand("demo", "Replay reference examples: expected vs computed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (const Common* c : {&diff.common, &grad.common, &lineint.common, &apply.common, &eps.common,
                            &closed.common, &potential.common, &rb.common}) {
      c->quad.validate();
    }
    if (*diff_cmd) return cmd_diff(diff, out);
    if (*grad_cmd) return cmd_grad(grad, out);
    if (*lineint_cmd) return cmd_lineint(lineint, out);
    if (*apply_cmd) return cmd_apply(apply, out);
    if (*eps_cmd) {
      ApplyArgs a{eps.common, "epsilon", eps.input, ""};
      return cmd_apply(a, out);
    }
    if (*closed_cmd) return cmd_closed(closed, out);
    if (*potential_cmd) return cmd_potential(potential, out);
    if (*rb_cmd) return cmd_rota_baxter(rb, out);
    if (*check_cmd) return cmd_check(check, out);
    if (*demo_cmd) return cmd_demo(out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const NonConvergence& e) {
    err << "quadrature did not converge: " << e.what() << " (estimate " << format_double(e.estimate())
        << ", error " << format_double(e.error()) << ")\n";
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cinf::cli
