// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cinf/expr_text.hpp"
#include "cinf/laws.hpp"
#include "cinf/smooth.hpp"
#include "cinf/sym.hpp"
#include "cli.hpp"

namespace {

using namespace cinf;
using laws::LawReport;
using laws::Mode;
using laws::Suite;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string describe(const LawReport& r) {
  std::ostringstream os;
  os << r.law << '[' << laws::to_string(r.mode) << "] trials=" << r.trials << " failures=" << r.failures
     << " inconclusive=" << r.inconclusive << " worst=" << r.worst_error;
  return os.str();
}

LawReport suite(Suite s, Mode m, std::size_t trials, std::optional<double> tol = {}, GenConfig gen = {}) {
  laws::TrialConfig t;
  t.seed = 42;
  t.trials = trials;
  t.tolerance = tol;
  return laws::run_suite(s, m, t, gen);
}

void require_pass(Outcome& o, const LawReport& r) {
  o.require(r.passed(), describe(r) + (r.counterexamples.empty() ? "" : "\n" + r.counterexamples.front()));
}

const sym::PolyOneForm& worked_form() {
  static const sym::PolyOneForm w(parse_poly_list("x1^2*x2^5, x1^3", 2));
  return w;
}

const Poly& worked_value() {
  static const Poly p = parse_poly("1/8*x1^3*x2^5 + 1/4*x1^3*x2", 2);
  return p;
}

Outcome c1() {
  Outcome o;
  const auto start = Clock::now();
  const Poly s = sym::integral(worked_form());
  const double t = seconds_since(start);
  o.require(s == worked_value(), "got " + to_string(s));
  o.require(t < 1e-3, "took " + std::to_string(t) + " s");
  return o;
}

Outcome c2() {
  Outcome o;
  const auto start = Clock::now();
  std::vector<Expr> comps;
  for (const Poly& p : worked_form().components()) comps.push_back(from_poly(p));
  const Expr s = smooth::line_integral(smooth::SmoothOneForm(comps));
  Rng rng(2);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto v = gen_point(rng, 2);
    worst = std::max(worst, std::abs(evaluate(s, v) - evaluate(worked_value(), std::span<const double>(v))));
  }
  const double t = seconds_since(start);
  o.require(worst <= 1e-9, "worst " + std::to_string(worst));
  o.require(t < 1.0, "took " + std::to_string(t) + " s");
  return o;
}

Outcome c3() {
  Outcome o;
  const auto start = Clock::now();
  for (Suite s : {Suite::DAxioms, Suite::SAxioms, Suite::Calculus, Suite::Inverses, Suite::RotaBaxter}) {
    const LawReport r = suite(s, Mode::Poly, 200);
    require_pass(o, r);
    o.require(r.worst_error == 0.0, describe(r));
  }
  const double t = seconds_since(start);
  o.require(t < 10.0, "took " + std::to_string(t) + " s");
  return o;
}

Outcome c4() {
  Outcome o;
  laws::TrialConfig t;
  t.trials = 200;
  GenConfig g;
  g.min_dimension = g.max_dimension = 2;
  const LawReport r = laws::run_suite(Suite::RotaBaxter, Mode::Poly, t, g, {laws::naive_integral});
  o.require(r.failures > 0, "naive rule survived: " + describe(r));
  return o;
}

Outcome c5() {
  Outcome o;
  const auto start = Clock::now();
  require_pass(o, suite(Suite::Inverses, Mode::Smooth, 50, 1e-7));
  const double t = seconds_since(start);
  o.require(t < 60.0, "took " + std::to_string(t) + " s");
  return o;
}

// The calculus suite checks the fundamental theorem at 1e-8 and, for the
// same trials, closedness of d f and d(s(d f)) = d f at 1e-7.
Outcome c6() {
  Outcome o;
  require_pass(o, suite(Suite::Calculus, Mode::Smooth, 50));
  return o;
}

Outcome c7() {
  Outcome o;
  require_pass(o, suite(Suite::Calculus, Mode::Smooth, 50, 1e-7));
  const smooth::ClosednessReport w = smooth::is_closed(smooth::SmoothOneForm(parse_expr_list("x2, -x1", 2)));
  o.require(!w.closed, "witness reported closed");
  o.require(std::abs(w.worst_asymmetry - 2.0) <= 1e-9, "asymmetry " + std::to_string(w.worst_asymmetry));
  return o;
}

Outcome c8() {
  Outcome o;
  GenConfig line;
  line.min_dimension = line.max_dimension = 1;
  require_pass(o, suite(Suite::RotaBaxter, Mode::Smooth, 50, 1e-8, line));
  const Expr p = smooth::rota_baxter(parse_expr("cos(x1)", 1), std::vector<double>{1.0});
  Rng rng(8);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto x = gen_point(rng, 1, -3.0, 3.0);
    worst = std::max(worst, std::abs(evaluate(p, x) - std::sin(x[0])));
  }
  o.require(worst <= 1e-9, "P(cos) vs sin worst " + std::to_string(worst));
  return o;
}

Outcome c9() {
  Outcome o;
  require_pass(o, suite(Suite::Epsilon, Mode::Smooth, 100));
  require_pass(o, suite(Suite::Epsilon, Mode::Poly, 100));
  return o;
}

Outcome c10() {
  Outcome o;
  require_pass(o, suite(Suite::Derivation, Mode::Smooth, 100));
  return o;
}

Outcome c11() {
  Outcome o;
  require_pass(o, suite(Suite::Naturality, Mode::Smooth, 100, 1e-9));
  require_pass(o, suite(Suite::LambdaCompat, Mode::Smooth, 100, 1e-9));
  require_pass(o, suite(Suite::Naturality, Mode::Poly, 100));
  return o;
}

struct CliRun {
  int code;
  std::string out;
  double seconds;
};

CliRun check_all() {
  const char* argv[] = {"cinf", "check", "--suite", "all", "--seed", "42", "--format", "json"};
  std::ostringstream out;
  std::ostringstream err;
  const auto start = Clock::now();
  const int code = cli::run(static_cast<int>(std::size(argv)), argv, out, err);
  return {code, out.str(), seconds_since(start)};
}

double full_run_seconds = 0.0;

Outcome c12() {
  Outcome o;
  const CliRun a = check_all();
  const CliRun b = check_all();
  full_run_seconds = a.seconds;
  o.require(a.code == cli::kOk, "first run exit " + std::to_string(a.code));
  o.require(b.code == cli::kOk, "second run exit " + std::to_string(b.code));
  o.require(!a.out.empty() && a.out == b.out, "reports differ");
  return o;
}

Outcome c13() {
  Outcome o;
  o.require(full_run_seconds > 0.0 && full_run_seconds < 180.0,
            "full suite took " + std::to_string(full_run_seconds) + " s");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact worked example", c1},
      {"smooth s agrees with exact s on the worked example", c2},
      {"polynomial suites exact", c3},
      {"naive rule fails Rota-Baxter in dimension 2", c4},
      {"smooth degree inverses", c5},
      {"smooth fundamental theorem", c6},
      {"smooth Poincare and non-closed witness", c7},
      {"Rota-Baxter on the real line and P(cos) = sin", c8},
      {"quasi-codereliction", c9},
      {"derivatives and square-zero extension", c10},
      {"naturality and lambda-compatibility", c11},
      {"deterministic JSON report", c12},
      {"full suite wall-clock", c13},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  %2zu  %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, seconds_since(start));
    if (!o.ok) {
      std::printf("      %s\n", o.detail.c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
