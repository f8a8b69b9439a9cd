#include "cinf/laws.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cinf/errors.hpp"
#include "cinf/expr_text.hpp"
#include "cinf/random.hpp"
#include "cinf/smooth.hpp"

namespace cinf::laws {

namespace {

constexpr std::array<Suite, 11> kSuites{
    Suite::DAxioms,     Suite::SAxioms, Suite::Calculus, Suite::Interchange,
    Suite::Epsilon,     Suite::Naturality, Suite::LambdaCompat, Suite::Chain,
    Suite::Inverses,    Suite::RotaBaxter, Suite::Derivation,
};

constexpr std::size_t kMaxCounterexamples = 3;

}  // namespace

const std::array<Suite, 11>& all_suites() noexcept { return kSuites; }

std::string_view to_string(Suite suite) noexcept {
  switch (suite) {
    case Suite::DAxioms: return "d-axioms";
    case Suite::SAxioms: return "s-axioms";
    case Suite::Calculus: return "calculus";
    case Suite::Interchange: return "interchange";
    case Suite::Epsilon: return "epsilon";
    case Suite::Naturality: return "naturality";
    case Suite::LambdaCompat: return "lambda-compat";
    case Suite::Chain: return "chain";
    case Suite::Inverses: return "inverses";
    case Suite::RotaBaxter: return "rota-baxter";
    case Suite::Derivation: return "derivation";
  }
  return "?";
}

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::Poly ? "poly-exact" : "smooth-numeric";
}

Suite parse_suite(std::string_view id) {
  for (Suite s : kSuites) {
    if (to_string(s) == id) return s;
  }
  throw std::invalid_argument("unknown suite '" + std::string(id) + "'");
}

Mode parse_mode(std::string_view id) {
  if (id == "poly" || id == "poly-exact") return Mode::Poly;
  if (id == "smooth" || id == "smooth-numeric") return Mode::Smooth;
  throw std::invalid_argument("unknown mode '" + std::string(id) + "'");
}

bool supports(Suite suite, Mode mode) noexcept {
  return !(suite == Suite::LambdaCompat && mode == Mode::Poly);
}

void TrialConfig::validate() const {
  if (trials && *trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (points == 0) throw std::invalid_argument("points must be at least 1");
  if (tolerance && !(*tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  quad.validate();
}

bool LawReport::passed() const noexcept { return failures == 0 && inconclusive * 20 <= trials; }

std::size_t default_trials(Suite suite, Mode mode) noexcept {
  if (mode == Mode::Poly) return 200;
  switch (suite) {
    case Suite::SAxioms:
    case Suite::Calculus:
    case Suite::Interchange:
    case Suite::Inverses:
    case Suite::RotaBaxter: return 50;
    default: return 100;
  }
}

Deviation pointwise_equal(const Expr& f, const Expr& g, std::span<const std::vector<double>> points,
                          double tol, const QuadConfig& quad) {
  Deviation out;
  for (const auto& p : points) {
    const double a = evaluate(f, p, quad);
    const double b = evaluate(g, p, quad);
    const double abs = std::abs(a - b);
    const double rel = abs / std::max(std::abs(b), 1.0);
    if (!std::isfinite(abs)) {
      out.max_abs = out.max_rel = std::numeric_limits<double>::infinity();
    } else {
      out.max_abs = std::max(out.max_abs, abs);
      out.max_rel = std::max(out.max_rel, rel);
    }
  }
  out.equal = out.max_abs <= tol;
  return out;
}

Poly naive_integral(const sym::PolyOneForm& form) {
  const std::size_t n = form.dimension();
  Poly out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [m, c] : form[i].terms()) {
      std::vector<unsigned> e = m.exponents();
      ++e[i];
      out.add_term(Monomial(std::move(e)), c / Rational(m.exponent(i) + 1));
    }
  }
  return out;
}

namespace {

using smooth::SmoothOneForm;
using smooth::SmoothTwoTensor;
using sym::PolyOneForm;
using sym::PolyTwoTensor;

struct Context {
  Mode mode;
  const TrialConfig& trial;
  const GenConfig& gen;
  const SuiteOptions& options;
};

struct Outcome {
  bool failed = false;
  bool inconclusive = false;
  double worst = 0.0;
  std::string detail;
};

double max_abs_coefficient(const Poly& p) {
  double out = 0.0;
  for (const auto& [m, c] : p.terms()) out = std::max(out, std::abs(c.get_d()));
  return out;
}

// Per-trial state: generator, evaluation points, worst error and the first
// failing identity.
class Trial {
 public:
  Trial(const Context& ctx, std::size_t index)
      : ctx_(ctx), index_(index), seed_(mix_seed(ctx.trial.seed, index)), rng_(seed_) {}

  Rng& rng() { return rng_; }
  const Context& ctx() const { return ctx_; }
  const GenConfig& gen() const { return ctx_.gen; }
  const QuadConfig& quad() const { return ctx_.trial.quad; }
  double tol(double fallback) const { return ctx_.trial.tolerance.value_or(fallback); }

  void input(std::string_view name, const std::string& text) {
    inputs_ += "\n  ";
    inputs_ += name;
    inputs_ += " = ";
    inputs_ += text;
  }

  // Points in [-1, 1]^dimension, drawn once per dimension per trial.
  const std::vector<std::vector<double>>& points(std::size_t dimension) {
    auto it = points_.find(dimension);
    if (it == points_.end()) {
      std::vector<std::vector<double>> pts;
      for (std::size_t k = 0; k < ctx_.trial.points; ++k) pts.push_back(gen_point(rng_, dimension));
      it = points_.emplace(dimension, std::move(pts)).first;
    }
    return it->second;
  }

  void holds(std::string_view identity, bool ok, double error = 1.0) {
    if (!ok) fail(identity, error);
  }

  void same(std::string_view identity, const Poly& a, const Poly& b) {
    if (!(a == b)) fail(identity, max_abs_coefficient(a - b));
  }

  void same(std::string_view identity, const PolyOneForm& a, const PolyOneForm& b) {
    if (a.dimension() != b.dimension()) return fail(identity, 1.0);
    for (std::size_t i = 0; i < a.dimension(); ++i) same(identity, a[i], b[i]);
  }

  void same(std::string_view identity, std::span<const Poly> a, std::span<const Poly> b) {
    if (a.size() != b.size()) return fail(identity, 1.0);
    for (std::size_t i = 0; i < a.size(); ++i) same(identity, a[i], b[i]);
  }

  void same(std::string_view identity, std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) return fail(identity, 1.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) fail(identity, std::abs(Rational(a[i] - b[i]).get_d()));
    }
  }

  void near(std::string_view identity, double a, double b, double tolerance) {
    record(identity, std::abs(a - b), tolerance);
  }

  void near_relative(std::string_view identity, double a, double b, double tolerance) {
    record(identity, std::abs(a - b) / std::max(std::abs(b), 1.0), tolerance);
  }

  void pointwise(std::string_view identity, const Expr& a, const Expr& b, std::size_t dimension,
                 double tolerance) {
    for (const auto& p : points(dimension)) {
      near(identity, evaluate(a, p, quad()), evaluate(b, p, quad()), tolerance);
    }
  }

  void pointwise(std::string_view identity, const SmoothOneForm& a, const SmoothOneForm& b,
                 std::size_t dimension, double tolerance) {
    if (a.dimension() != b.dimension()) return fail(identity, 1.0);
    for (std::size_t i = 0; i < a.dimension(); ++i) pointwise(identity, a[i], b[i], dimension, tolerance);
  }

  void mark_inconclusive(const char* what) {
    inconclusive_ = true;
    inconclusive_reason_ = what;
  }

  Outcome finish() && {
    Outcome out;
    out.worst = worst_;
    out.failed = !first_failure_.empty();
    out.inconclusive = !out.failed && inconclusive_;
    if (out.failed) {
      out.detail = "trial " + std::to_string(index_) + " (seed " + std::to_string(seed_) +
                   "): " + first_failure_ + inputs_;
    } else if (out.inconclusive) {
      out.detail = inconclusive_reason_;
    }
    return out;
  }

 private:
  void record(std::string_view identity, double error, double tolerance) {
    if (std::isnan(error)) error = std::numeric_limits<double>::infinity();
    worst_ = std::max(worst_, error);
    if (!(error <= tolerance)) fail(identity, error);
  }

  void fail(std::string_view identity, double error) {
    worst_ = std::max(worst_, error);
    if (first_failure_.empty()) {
      first_failure_ = std::string(identity) + " violated, error " + format_double(error);
    }
  }

  const Context& ctx_;
  std::size_t index_;
  std::uint64_t seed_;
  Rng rng_;
  std::map<std::size_t, std::vector<std::vector<double>>> points_;
  std::string inputs_;
  std::string first_failure_;
  std::string inconclusive_reason_;
  bool inconclusive_ = false;
  double worst_ = 0.0;
};

GenConfig shallow(const GenConfig& cfg, unsigned depth, unsigned degree) {
  GenConfig out = cfg;
  out.max_depth = std::min(cfg.max_depth, depth);
  out.max_degree = std::min(cfg.max_degree, degree);
  out.max_terms = std::min(cfg.max_terms, 4u);
  return out;
}

std::size_t arity(Trial& t) {
  return static_cast<std::size_t>(t.rng().uniform_int(1, static_cast<long>(t.gen().max_dimension)));
}

// ---------------------------------------------------------------------------
// Polynomial helpers. Every use of the integral transformation goes through
// integrate() so the negative control can swap it out.

Poly integrate(const Trial& t, const PolyOneForm& form) {
  const auto& override_fn = t.ctx().options.poly_integral;
  return override_fn ? override_fn(form) : sym::integral(form);
}

PolyOneForm integrate_first_slot(const Trial& t, const PolyTwoTensor& tensor) {
  const std::size_t n = tensor.dimension();
  PolyOneForm out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Poly> column;
    for (std::size_t j = 0; j < n; ++j) column.push_back(tensor(j, i));
    out[i] = integrate(t, PolyOneForm(std::move(column)));
  }
  return out;
}

Poly rota_baxter(const Trial& t, const Poly& p, std::span<const Rational> v) {
  std::vector<Poly> components;
  for (const Rational& vi : v) components.push_back(vi * p);
  return integrate(t, PolyOneForm(std::move(components)));
}

Poly double_product(const Trial& t, const Poly& a, const Poly& b, std::span<const Rational> v) {
  return a * rota_baxter(t, b, v) + rota_baxter(t, a, v) * b;
}

PolyOneForm basis_form(std::size_t n, std::size_t i) {
  PolyOneForm out(n);
  out[i] = Poly::constant(n, 1);
  return out;
}

std::vector<Rational> origin(std::size_t n) { return std::vector<Rational>(n, Rational(0)); }

std::vector<Rational> poly_epsilon(const Poly& p) {
  const std::size_t n = p.dimension();
  const auto zero = origin(n);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(evaluate(partial(p, i), zero));
  return out;
}

std::vector<Poly> gen_poly_vector(const GenConfig& cfg, Rng& rng, std::size_t count, std::size_t dimension) {
  std::vector<Poly> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(gen_poly(cfg, rng, dimension));
  return out;
}

std::string poly_list(std::span<const Poly> ps) {
  std::string out;
  for (std::size_t k = 0; k < ps.size(); ++k) out += (k ? "; " : "") + to_string(ps[k]);
  return out;
}

// Σ_j (∂g/∂y_j ∘ α)·d(α_j)
PolyOneForm chain_rhs(const Poly& g, std::span<const Poly> alpha, std::size_t n) {
  PolyOneForm out(n);
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    out += substitute(partial(g, j), alpha) * sym::differential(alpha[j]);
  }
  return out;
}

struct PolyDual {
  Poly base;
  std::vector<Poly> tangent;
};

PolyDual poly_square_zero(const Poly& g, std::span<const PolyDual> duals, std::size_t n) {
  std::vector<Poly> bases;
  for (const auto& d : duals) bases.push_back(d.base);
  const std::size_t rank = duals.front().tangent.size();
  PolyDual out{substitute(g, bases), std::vector<Poly>(rank, Poly(n))};
  for (std::size_t j = 0; j < duals.size(); ++j) {
    const Poly dg = substitute(partial(g, j), bases);
    for (std::size_t c = 0; c < rank; ++c) out.tangent[c] += dg * duals[j].tangent[c];
  }
  return out;
}

PolyDual operator*(const PolyDual& a, const PolyDual& b) {
  PolyDual out{a.base * b.base, {}};
  for (std::size_t c = 0; c < a.tangent.size(); ++c) {
    out.tangent.push_back(a.base * b.tangent[c] + b.base * a.tangent[c]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial suites.

void poly_d_axioms(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Poly p = gen_poly(t.gen(), t.rng(), n);
  const Poly q = gen_poly(t.gen(), t.rng(), n);
  t.input("p", to_string(p));
  t.input("q", to_string(q));

  t.same("d(1) = 0", sym::differential(Poly::constant(n, 1)), PolyOneForm(n));
  t.same("d(pq) = p dq + q dp", sym::differential(p * q),
         p * sym::differential(q) + q * sym::differential(p));
  for (std::size_t i = 0; i < n; ++i) {
    t.same("d(x_i) = dx_i", sym::differential(Poly::variable(n, i)), basis_form(n, i));
  }

  const GenConfig small = shallow(t.gen(), 0, 3);
  const std::size_t m = arity(t);
  const Poly g = gen_poly(small, t.rng(), m);
  const auto alpha = gen_poly_vector(small, t.rng(), m, n);
  t.input("g", to_string(g));
  t.input("alpha", poly_list(alpha));
  t.same("d(g o alpha) = sum_j (dg/dy_j o alpha) d(alpha_j)",
         sym::differential(substitute(g, alpha)), chain_rhs(g, alpha, n));

  const PolyTwoTensor h = sym::second_differential(p);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) t.same("second differential is symmetric", h(j, i), h(i, j));
}

void poly_s_axioms(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  for (std::size_t i = 0; i < n; ++i) {
    t.same("s(1 dx_i) = x_i", integrate(t, basis_form(n, i)), Poly::variable(n, i));
  }
  const PolyOneForm w = gen_poly_oneform(t.gen(), t.rng(), n);
  const PolyOneForm v = gen_poly_oneform(t.gen(), t.rng(), n);
  t.input("omega", sym::to_string(w));
  t.input("nu", sym::to_string(v));
  const Poly sw = integrate(t, w);
  const Poly sv = integrate(t, v);
  t.same("s(w)s(v) = s(s(v)w) + s(s(w)v)", sw * sv, integrate(t, sv * w) + integrate(t, sw * v));

  const PolyTwoTensor tensor = gen_poly_twotensor(shallow(t.gen(), 0, 4), t.rng(), n);
  t.same("s(s x 1)(T) = s(s x 1)(T^t)", integrate(t, integrate_first_slot(t, tensor)),
         integrate(t, integrate_first_slot(t, tensor.transposed())));
}

void poly_calculus(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Poly p = gen_poly(t.gen(), t.rng(), n);
  t.input("p", to_string(p));
  const PolyOneForm dp = sym::differential(p);
  t.same("s(dp) + p(0) = p", integrate(t, dp) + Poly::constant(n, p.constant_term()), p);
  t.same("d(s(w)) = w for closed w", sym::differential(integrate(t, dp)), dp);

  const PolyOneForm w = gen_poly_oneform(t.gen(), t.rng(), n);
  t.input("omega", sym::to_string(w));
  const Poly sw = integrate(t, w);
  t.same("s = K^-1 o d°", sw, sym::degree_op_inverse(DegreeOp::K, sym::coderiving(w)));
  std::vector<Poly> jw;
  for (const Poly& c : w.components()) jw.push_back(sym::degree_op_inverse(DegreeOp::J, c));
  t.same("s = d° o (J^-1 x 1)", sw, sym::coderiving(PolyOneForm(std::move(jw))));
}

void poly_interchange(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Poly p = gen_poly(t.gen(), t.rng(), n);
  t.input("p", to_string(p));
  const PolyTwoTensor h = sym::second_differential(p);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) t.same("(d x 1)d is symmetric", h(j, i), h(i, j));

  const PolyTwoTensor tensor = gen_poly_twotensor(t.gen(), t.rng(), n);
  t.same("s(s x 1)(T) = s(s x 1)(T^t)", integrate(t, integrate_first_slot(t, tensor)),
         integrate(t, integrate_first_slot(t, tensor.transposed())));
  t.same("on (d x 1)d", integrate(t, integrate_first_slot(t, h)),
         integrate(t, integrate_first_slot(t, h.transposed())));
}

void poly_epsilon_suite(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Poly p = gen_poly(t.gen(), t.rng(), n);
  const Poly q = gen_poly(t.gen(), t.rng(), n);
  t.input("p", to_string(p));
  t.input("q", to_string(q));

  t.same("(i) eps(1) = 0", poly_epsilon(Poly::constant(n, 1)), origin(n));
  const auto ep = poly_epsilon(p);
  const auto eq = poly_epsilon(q);
  std::vector<Rational> leibniz;
  for (std::size_t i = 0; i < n; ++i) {
    leibniz.push_back(p.constant_term() * eq[i] + ep[i] * q.constant_term());
  }
  t.same("(ii) eps(pq) = p(0)eps(q) + eps(p)q(0)", poly_epsilon(p * q), leibniz);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e = origin(n);
    e[i] = 1;
    t.same("(iii) eps(x_i) = e_i", poly_epsilon(Poly::variable(n, i)), e);
  }
  std::vector<Rational> linear;
  for (std::size_t i = 0; i < n; ++i) linear.push_back(p.coefficient(Monomial::variable(n, i)));
  t.same("eps(p) = linear coefficients of p", ep, linear);
  t.same("e(pq) = e(p)e(q)", Poly::constant(n, (p * q).constant_term()),
         Poly::constant(n, p.constant_term() * q.constant_term()));

  const GenConfig small = shallow(t.gen(), 0, 3);
  const std::size_t m = arity(t);
  const Poly g = gen_poly(small, t.rng(), m);
  const auto alpha = gen_poly_vector(small, t.rng(), m, n);
  t.input("g", to_string(g));
  t.input("alpha", poly_list(alpha));
  std::vector<Rational> alpha0;
  for (const Poly& a : alpha) alpha0.push_back(a.constant_term());
  std::vector<Rational> chain = origin(n);
  for (std::size_t j = 0; j < m; ++j) {
    const Rational dg = evaluate(partial(g, j), alpha0);
    const auto ea = poly_epsilon(alpha[j]);
    for (std::size_t i = 0; i < n; ++i) chain[i] += dg * ea[i];
  }
  t.same("(iv) eps(g o alpha) = sum_j dg/dy_j(alpha(0)) eps(alpha_j)", poly_epsilon(substitute(g, alpha)),
         chain);
}

void poly_naturality(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const std::size_t m = arity(t);
  const Poly p = gen_poly(t.gen(), t.rng(), n);
  const PolyOneForm w = gen_poly_oneform(shallow(t.gen(), 0, 4), t.rng(), n);
  const auto h = gen_rational_vector(t.gen(), t.rng(), m * n);  // m×n, row-major
  t.input("p", to_string(p));
  t.input("omega", sym::to_string(w));

  // S(h): x_j ↦ Σ_i h(i, j) x_i
  std::vector<Poly> image;
  for (std::size_t j = 0; j < n; ++j) {
    Poly a(m);
    for (std::size_t i = 0; i < m; ++i) a.add_term(Monomial::variable(m, i), h[i * n + j]);
    image.push_back(std::move(a));
  }
  auto push_form = [&](const PolyOneForm& form) {
    PolyOneForm out(m);
    for (std::size_t j = 0; j < n; ++j) {
      const Poly c = substitute(form[j], image);
      for (std::size_t i = 0; i < m; ++i) out[i] += h[i * n + j] * c;
    }
    return out;
  };

  t.same("d o S(h) = (S(h) x h) o d", sym::differential(substitute(p, image)), push_form(sym::differential(p)));
  t.same("s o (S(h) x h) = S(h) o s", integrate(t, push_form(w)), substitute(integrate(t, w), image));
  t.same("d° o (S(h) x h) = S(h) o d°", sym::coderiving(push_form(w)), substitute(sym::coderiving(w), image));
}

void poly_chain(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const GenConfig small = shallow(t.gen(), 0, 3);
  const std::size_t m = arity(t);
  const Poly g = gen_poly(small, t.rng(), m);
  const Poly g2 = gen_poly(small, t.rng(), m);
  const auto alpha = gen_poly_vector(small, t.rng(), m, n);
  t.input("g", to_string(g));
  t.input("g2", to_string(g2));
  t.input("alpha", poly_list(alpha));

  t.same("d(g o alpha) = sum_j (dg/dy_j o alpha) d(alpha_j)", sym::differential(substitute(g, alpha)),
         chain_rhs(g, alpha, n));
  t.same("(g g2) o alpha = (g o alpha)(g2 o alpha)", substitute(g * g2, alpha),
         substitute(g, alpha) * substitute(g2, alpha));

  const std::size_t k = arity(t);
  const auto beta = gen_poly_vector(shallow(t.gen(), 0, 2), t.rng(), n, k);
  t.input("beta", poly_list(beta));
  std::vector<Poly> alpha_beta;
  for (const Poly& a : alpha) alpha_beta.push_back(substitute(a, beta));
  t.same("(g o alpha) o beta = g o (alpha o beta)", substitute(substitute(g, alpha), beta),
         substitute(g, alpha_beta));
}

void poly_inverses(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Poly p = gen_poly(t.gen(), t.rng(), n);
  t.input("p", to_string(p));
  for (DegreeOp op : {DegreeOp::K, DegreeOp::J}) {
    const std::string name = to_string(op);
    t.same(name + "^-1 o " + name + " = 1", sym::degree_op_inverse(op, sym::degree_op(op, p)), p);
    t.same(name + " o " + name + "^-1 = 1", sym::degree_op(op, sym::degree_op_inverse(op, p)), p);
  }
  const Poly l = sym::degree_op(DegreeOp::L, p);
  t.same("L = d° o d", l, sym::coderiving(sym::differential(p)));
  t.same("K = L + e", sym::degree_op(DegreeOp::K, p), l + Poly::constant(n, p.constant_term()));
  t.same("J = L + 1", sym::degree_op(DegreeOp::J, p), l + p);
}

void poly_rota_baxter(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const auto v = gen_rational_vector(t.gen(), t.rng(), n);
  const GenConfig small = shallow(t.gen(), 0, 4);
  const Poly a = gen_poly(small, t.rng(), n);
  const Poly b = gen_poly(small, t.rng(), n);
  std::string vt;
  for (std::size_t i = 0; i < n; ++i) vt += (i ? ", " : "") + v[i].get_str();
  t.input("v", vt);
  t.input("a", to_string(a));
  t.input("b", to_string(b));

  const Poly pa = rota_baxter(t, a, v);
  const Poly pb = rota_baxter(t, b, v);
  t.same("P(a)P(b) = P(aP(b)) + P(P(a)b)", pa * pb, rota_baxter(t, a * pb, v) + rota_baxter(t, pa * b, v));
  const Poly ab = double_product(t, a, b, v);
  t.same("P(a * b) = P(a)P(b)", rota_baxter(t, ab, v), pa * pb);
  t.same("a * b = b * a", ab, double_product(t, b, a, v));
}

void poly_derivation(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const GenConfig small = shallow(t.gen(), 0, 3);
  const std::size_t k = arity(t);
  const Poly g = gen_poly(small, t.rng(), k);
  const Poly g2 = gen_poly(small, t.rng(), k);
  const auto alpha = gen_poly_vector(small, t.rng(), k, n);
  t.input("g", to_string(g));
  t.input("g2", to_string(g2));
  t.input("alpha", poly_list(alpha));

  std::vector<PolyDual> forward;
  for (const Poly& a : alpha) forward.push_back({a, sym::differential(a).components()});
  const PolyDual out = poly_square_zero(g, forward, n);
  t.same("tangent of g(alpha, d alpha) = d(g o alpha)", PolyOneForm(out.tangent),
         sym::differential(substitute(g, alpha)));

  const std::size_t rank = arity(t);
  std::vector<PolyDual> duals;
  for (const Poly& a : alpha) duals.push_back({a, gen_poly_vector(small, t.rng(), rank, n)});
  const PolyDual lhs = poly_square_zero(g * g2, duals, n);
  const PolyDual rhs = poly_square_zero(g, duals, n) * poly_square_zero(g2, duals, n);
  t.same("(g g2)~ = g~ g2~ (base)", lhs.base, rhs.base);
  t.same("(g g2)~ = g~ g2~ (tangent)", std::span<const Poly>(lhs.tangent), std::span<const Poly>(rhs.tangent));
}

// ---------------------------------------------------------------------------
// Smooth helpers.

SmoothOneForm basis_smooth(std::size_t n, std::size_t i) {
  std::vector<Expr> c(n, Expr::constant(0.0));
  c[i] = Expr::constant(1.0);
  return SmoothOneForm(std::move(c));
}

std::vector<Expr> gen_expr_vector(const GenConfig& cfg, Rng& rng, std::size_t count, std::size_t dimension) {
  std::vector<Expr> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(gen_expr(cfg, rng, dimension));
  return out;
}

std::string expr_list(std::span<const Expr> es) {
  std::string out;
  for (std::size_t k = 0; k < es.size(); ++k) out += (k ? "; " : "") + to_string(es[k]);
  return out;
}

SmoothOneForm add(const SmoothOneForm& a, const SmoothOneForm& b) {
  std::vector<Expr> out;
  for (std::size_t i = 0; i < a.dimension(); ++i) out.push_back(simplify(a[i] + b[i]));
  return SmoothOneForm(std::move(out));
}

SmoothOneForm smooth_chain_rhs(const Expr& g, std::span<const Expr> alpha, std::size_t n) {
  SmoothOneForm out = SmoothOneForm::zero(n);
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (!g.depends_on(j)) continue;
    out = add(out, substitute(partial(g, j, alpha.size()), alpha) * smooth::differential(alpha[j], n));
  }
  return out;
}

smooth::DualElement multiply(const smooth::DualElement& a, const smooth::DualElement& b) {
  smooth::DualElement out{simplify(a.base * b.base), {}};
  for (std::size_t c = 0; c < a.tangent.size(); ++c) {
    out.tangent.push_back(simplify(a.base * b.tangent[c] + b.base * a.tangent[c]));
  }
  return out;
}

std::vector<double> smooth_v(Trial& t, std::size_t n) {
  if (n == 1) return {1.0};
  return gen_point(t.rng(), n);
}

std::string vector_text(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_double(v[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Smooth suites.

void smooth_d_axioms(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Expr f = gen_expr(t.gen(), t.rng(), n);
  const Expr g = gen_expr(t.gen(), t.rng(), n);
  t.input("f", to_string(f));
  t.input("g", to_string(g));
  const double tol = t.tol(1e-9);

  const SmoothOneForm d1 = smooth::differential(Expr::constant(1.0), n);
  for (const Expr& c : d1.components()) {
    t.holds("d(1) = 0", c.is_constant(0.0));
  }
  const SmoothOneForm df = smooth::differential(f, n);
  const SmoothOneForm dg = smooth::differential(g, n);
  t.pointwise("d(fg) = f dg + g df", smooth::differential(f * g, n), add(f * dg, g * df), n, tol);
  for (std::size_t i = 0; i < n; ++i) {
    const SmoothOneForm dx = smooth::differential(Expr::var(i), n);
    for (std::size_t j = 0; j < n; ++j) t.holds("d(x_i) = dx_i", dx[j].is_constant(i == j ? 1.0 : 0.0));
  }

  const GenConfig small = shallow(t.gen(), 2, t.gen().max_degree);
  const std::size_t m = arity(t);
  const Expr outer = gen_expr(small, t.rng(), m);
  const auto alpha = gen_expr_vector(small, t.rng(), m, n);
  t.input("outer", to_string(outer));
  t.input("alpha", expr_list(alpha));
  t.pointwise("d(g o alpha) = sum_j (dg/dy_j o alpha) d(alpha_j)",
              smooth::differential(substitute(outer, alpha), n), smooth_chain_rhs(outer, alpha, n), n, tol);

  const SmoothTwoTensor h = smooth::second_differential(f, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i) t.pointwise("(d x 1)d is symmetric", h(j, i), h(i, j), n, tol);
}

void smooth_s_axioms(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const double tol = t.tol(1e-8);
  for (std::size_t i = 0; i < n; ++i) {
    t.pointwise("s(1 dx_i) = x_i", smooth::line_integral(basis_smooth(n, i)), Expr::var(i), n, tol);
  }
  const GenConfig cfg = shallow(t.gen(), 4, t.gen().max_degree);
  const SmoothOneForm w = gen_oneform(cfg, t.rng(), n);
  const SmoothOneForm v = gen_oneform(cfg, t.rng(), n);
  t.input("omega", smooth::to_string(w));
  t.input("nu", smooth::to_string(v));
  const Expr sw = smooth::line_integral(w);
  const Expr sv = smooth::line_integral(v);
  t.pointwise("s(w)s(v) = s(s(v)w) + s(s(w)v)", simplify(sw * sv),
              simplify(smooth::line_integral(sv * w) + smooth::line_integral(sw * v)), n, tol);

  const SmoothTwoTensor tensor = gen_twotensor(shallow(t.gen(), 3, t.gen().max_degree), t.rng(), n);
  t.pointwise("s(s x 1)(T) = s(s x 1)(T^t)", smooth::line_integral(smooth::line_integral_first_slot(tensor)),
              smooth::line_integral(smooth::line_integral_first_slot(tensor.transposed())), n, tol);
}

void smooth_calculus(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Expr f = gen_expr(t.gen(), t.rng(), n);
  t.input("f", to_string(f));
  const SmoothOneForm df = smooth::differential(f, n);
  t.pointwise("s(df) + f(0) = f",
              simplify(smooth::line_integral(df) + Expr::constant(smooth::counit(f, n, t.quad()))), f, n,
              t.tol(1e-8));

  const auto closed = smooth::is_closed(df, 25, 1e-9, t.quad(), t.rng().next());
  t.holds("d(f) passes the closedness test", closed.closed, closed.worst_asymmetry);
  t.pointwise("d(s(w)) = w for closed w", smooth::differential(smooth::line_integral(df), n), df, n,
              t.tol(1e-7));

  const SmoothOneForm w = gen_oneform(shallow(t.gen(), 3, t.gen().max_degree), t.rng(), n);
  t.input("omega", smooth::to_string(w));
  const Expr sw = smooth::line_integral(w);
  t.pointwise("s = K^-1 o d°", sw, smooth::degree_op_inverse(DegreeOp::K, smooth::coderiving(w), n, t.quad()), n,
              t.tol(1e-8));
  std::vector<Expr> jw;
  for (const Expr& c : w.components()) jw.push_back(smooth::degree_op_inverse(DegreeOp::J, c, n));
  t.pointwise("s = d° o (J^-1 x 1)", sw, smooth::coderiving(SmoothOneForm(std::move(jw))), n, t.tol(1e-8));

  if (n >= 2) {
    std::vector<Expr> rot(n, Expr::constant(0.0));
    rot[0] = Expr::var(1);
    rot[1] = -Expr::var(0);
    const auto report = smooth::is_closed(SmoothOneForm(std::move(rot)), 25, 1e-9, t.quad());
    t.holds("x2 dx1 - x1 dx2 is not closed, asymmetry 2",
            !report.closed && std::abs(report.worst_asymmetry - 2.0) <= 1e-9, report.worst_asymmetry);
  }
}

void smooth_interchange(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Expr f = gen_expr(t.gen(), t.rng(), n);
  t.input("f", to_string(f));
  const SmoothTwoTensor h = smooth::second_differential(f, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i) t.pointwise("(d x 1)d is symmetric", h(j, i), h(i, j), n, t.tol(1e-9));

  const SmoothTwoTensor tensor = gen_twotensor(shallow(t.gen(), 3, t.gen().max_degree), t.rng(), n);
  t.pointwise("s(s x 1)(T) = s(s x 1)(T^t)", smooth::line_integral(smooth::line_integral_first_slot(tensor)),
              smooth::line_integral(smooth::line_integral_first_slot(tensor.transposed())), n, t.tol(1e-8));
}

void smooth_inverses(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Expr f = gen_expr(t.gen(), t.rng(), n);
  t.input("f", to_string(f));
  const double tol = t.tol(1e-7);
  const auto& q = t.quad();
  for (DegreeOp op : {DegreeOp::K, DegreeOp::J}) {
    const std::string name = to_string(op);
    t.pointwise(name + " o " + name + "* = 1",
                smooth::degree_op(op, smooth::degree_op_inverse(op, f, n, q), n, q), f, n, tol);
    t.pointwise(name + "* o " + name + " = 1",
                smooth::degree_op_inverse(op, smooth::degree_op(op, f, n, q), n, q), f, n, tol);
  }
}

void smooth_epsilon(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Expr f = gen_expr(t.gen(), t.rng(), n);
  const Expr g = gen_expr(t.gen(), t.rng(), n);
  t.input("f", to_string(f));
  t.input("g", to_string(g));
  const double tol = t.tol(1e-8);
  const auto& q = t.quad();

  for (double e : smooth::epsilon(Expr::constant(1.0), n, q)) t.holds("(i) eps(1) = 0", e == 0.0, std::abs(e));
  const auto ef = smooth::epsilon(f, n, q);
  const auto eg = smooth::epsilon(g, n, q);
  const double f0 = smooth::counit(f, n, q);
  const double g0 = smooth::counit(g, n, q);
  const auto efg = smooth::epsilon(f * g, n, q);
  for (std::size_t i = 0; i < n; ++i) {
    t.near("(ii) eps(fg) = f(0)eps(g) + eps(f)g(0)", efg[i], f0 * eg[i] + ef[i] * g0, tol);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto ex = smooth::epsilon(Expr::var(i), n, q);
    for (std::size_t j = 0; j < n; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      t.holds("(iii) eps(x_i) = e_i", ex[j] == expected, std::abs(ex[j] - expected));
    }
  }
  t.near("e(fg) = e(f)e(g)", smooth::counit(f * g, n, q), f0 * g0, tol);

  const GenConfig small = shallow(t.gen(), 2, t.gen().max_degree);
  const std::size_t m = arity(t);
  const Expr outer = gen_expr(small, t.rng(), m);
  const auto alpha = gen_expr_vector(small, t.rng(), m, n);
  t.input("outer", to_string(outer));
  t.input("alpha", expr_list(alpha));
  std::vector<double> alpha0;
  for (const Expr& a : alpha) alpha0.push_back(smooth::counit(a, n, q));
  std::vector<double> chain(n, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double dg = evaluate(partial(outer, j, m), alpha0, q);
    const auto ea = smooth::epsilon(alpha[j], n, q);
    for (std::size_t i = 0; i < n; ++i) chain[i] += dg * ea[i];
  }
  const auto composite = smooth::epsilon(substitute(outer, alpha), n, q);
  for (std::size_t i = 0; i < n; ++i) {
    t.near("(iv) eps(g o alpha) = sum_j dg/dy_j(alpha(0)) eps(alpha_j)", composite[i], chain[i], tol);
  }
}

void smooth_naturality(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const std::size_t m = arity(t);
  const Expr f = gen_expr(t.gen(), t.rng(), n);
  const SmoothOneForm w = gen_oneform(shallow(t.gen(), 3, t.gen().max_degree), t.rng(), n);
  const Matrix h = gen_matrix(t.rng(), m, n);
  t.input("f", to_string(f));
  t.input("omega", smooth::to_string(w));
  std::vector<double> entries;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) entries.push_back(h(i, j));
  t.input("h", vector_text(entries));
  const double tol = t.tol(1e-9);

  auto push_form = [&](const SmoothOneForm& form) {
    std::vector<std::vector<Expr>> terms(m);
    for (std::size_t j = 0; j < n; ++j) {
      const Expr c = substitute_linear(form[j], h);
      for (std::size_t i = 0; i < m; ++i) terms[i].push_back(Expr::constant(h(i, j)) * c);
    }
    std::vector<Expr> out;
    for (auto& ts : terms) out.push_back(simplify(Expr::sum(std::move(ts))));
    return SmoothOneForm(std::move(out));
  };
  t.pointwise("d o C(h) = (C(h) x h) o d", smooth::differential(substitute_linear(f, h), m),
              push_form(smooth::differential(f, n)), m, tol);
  t.pointwise("s o (C(h) x h) = C(h) o s", smooth::line_integral(push_form(w)),
              substitute_linear(smooth::line_integral(w), h), m, tol);
}

void smooth_lambda_compat(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Poly p = gen_poly(t.gen(), t.rng(), n);
  const PolyOneForm w = gen_poly_oneform(t.gen(), t.rng(), n);
  t.input("p", to_string(p));
  t.input("omega", sym::to_string(w));
  const double tol = t.tol(1e-9);
  const Expr fp = from_poly(p);
  std::vector<Expr> fw;
  for (const Poly& c : w.components()) fw.push_back(from_poly(c));
  const SmoothOneForm smooth_w(std::move(fw));
  const auto& q = t.quad();

  const SmoothOneForm d = smooth::differential(fp, n);
  const PolyOneForm dp = sym::differential(p);
  for (std::size_t i = 0; i < n; ++i) t.pointwise("d(lambda p) = lambda(d p)", d[i], from_poly(dp[i]), n, tol);
  t.pointwise("s(lambda w) = lambda(s w)", smooth::line_integral(smooth_w), from_poly(sym::integral(w)), n, tol);
  t.pointwise("d°(lambda w) = lambda(d° w)", smooth::coderiving(smooth_w), from_poly(sym::coderiving(w)), n, tol);
  for (DegreeOp op : {DegreeOp::L, DegreeOp::K, DegreeOp::J}) {
    t.pointwise(std::string(to_string(op)) + "(lambda p) = lambda(" + to_string(op) + " p)",
                smooth::degree_op(op, fp, n, q), from_poly(sym::degree_op(op, p)), n, tol);
  }
  for (DegreeOp op : {DegreeOp::K, DegreeOp::J}) {
    t.pointwise(std::string(to_string(op)) + "*(lambda p) = lambda(" + to_string(op) + "^-1 p)",
                smooth::degree_op_inverse(op, fp, n, q), from_poly(sym::degree_op_inverse(op, p)), n, tol);
  }
}

void smooth_chain(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const GenConfig small = shallow(t.gen(), 3, t.gen().max_degree);
  const GenConfig inner = shallow(t.gen(), 2, t.gen().max_degree);
  const std::size_t m = arity(t);
  const Expr g = gen_expr(small, t.rng(), m);
  const auto alpha = gen_expr_vector(inner, t.rng(), m, n);
  t.input("g", to_string(g));
  t.input("alpha", expr_list(alpha));
  const double tol = t.tol(1e-9);

  t.pointwise("d(g o alpha) = sum_j (dg/dy_j o alpha) d(alpha_j)", smooth::differential(substitute(g, alpha), n),
              smooth_chain_rhs(g, alpha, n), n, tol);

  const std::size_t k = arity(t);
  const auto beta = gen_expr_vector(inner, t.rng(), n, k);
  t.input("beta", expr_list(beta));
  std::vector<Expr> alpha_beta;
  for (const Expr& a : alpha) alpha_beta.push_back(substitute(a, beta));
  t.pointwise("(g o alpha) o beta = g o (alpha o beta)", substitute(substitute(g, alpha), beta),
              substitute(g, alpha_beta), k, tol);
}

void smooth_rota_baxter(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const auto v = smooth_v(t, n);
  const GenConfig cfg = shallow(t.gen(), 4, t.gen().max_degree);
  const Expr f = gen_expr(cfg, t.rng(), n);
  const Expr g = gen_expr(cfg, t.rng(), n);
  t.input("v", vector_text(v));
  t.input("f", to_string(f));
  t.input("g", to_string(g));
  const double tol = t.tol(1e-8);

  const Expr pf = smooth::rota_baxter(f, v);
  const Expr pg = smooth::rota_baxter(g, v);
  const Expr product = simplify(pf * pg);
  t.pointwise("P(f)P(g) = P(fP(g)) + P(P(f)g)", product,
              simplify(smooth::rota_baxter(simplify(f * pg), v) + smooth::rota_baxter(simplify(pf * g), v)), n, tol);
  const Expr fg = smooth::double_product(f, g, v);
  t.pointwise("P(f * g) = P(f)P(g)", smooth::rota_baxter(fg, v), product, n, tol);
  t.pointwise("f * g = g * f", fg, smooth::double_product(g, f, v), n, tol);
}

void smooth_derivation(Trial& t) {
  const std::size_t n = gen_dimension(t.gen(), t.rng());
  const Expr f = gen_expr(t.gen(), t.rng(), n);
  t.input("f", to_string(f));
  const auto& q = t.quad();

  constexpr double kStep = 1e-5;
  const double fd_tol = t.tol(1e-5);
  const SmoothOneForm df = smooth::differential(f, n);
  for (const auto& p : t.points(n)) {
    for (std::size_t i = 0; i < n; ++i) {
      auto hi = p;
      auto lo = p;
      hi[i] += kStep;
      lo[i] -= kStep;
      const double fd = (evaluate(f, hi, q) - evaluate(f, lo, q)) / (2 * kStep);
      t.near_relative("symbolic partial = central difference", evaluate(df[i], p, q), fd, fd_tol);
    }
  }

  const double tol = t.tol(1e-9);
  const GenConfig small = shallow(t.gen(), 3, t.gen().max_degree);
  const GenConfig inner = shallow(t.gen(), 2, t.gen().max_degree);
  const std::size_t k = arity(t);
  const Expr g = gen_expr(small, t.rng(), k);
  const Expr g2 = gen_expr(small, t.rng(), k);
  const auto alpha = gen_expr_vector(inner, t.rng(), k, n);
  t.input("g", to_string(g));
  t.input("g2", to_string(g2));
  t.input("alpha", expr_list(alpha));

  std::vector<smooth::DualElement> forward;
  for (const Expr& a : alpha) forward.push_back({a, smooth::differential(a, n).components()});
  const auto out = smooth::square_zero_apply(g, forward);
  t.pointwise("tangent of g(alpha, d alpha) = d(g o alpha)", SmoothOneForm(out.tangent),
              smooth::differential(substitute(g, alpha), n), n, tol);

  const std::size_t i = t.rng().index(n);
  const Expr h = gen_expr(small, t.rng(), 1);
  t.input("h", to_string(h));
  const smooth::DualElement xi{Expr::var(i), {Expr::constant(1.0)}};
  const auto single = smooth::square_zero_apply(h, std::span(&xi, 1));
  t.pointwise("h(x_i, 1) has tangent dh(x_i)/dx_i", single.tangent[0],
              partial(substitute(h, std::vector<Expr>{Expr::var(i)}), i, n), n, tol);

  const std::size_t rank = arity(t);
  std::vector<smooth::DualElement> duals;
  for (const Expr& a : alpha) duals.push_back({a, gen_expr_vector(inner, t.rng(), rank, n)});
  const auto lhs = smooth::square_zero_apply(g * g2, duals);
  const auto rhs = multiply(smooth::square_zero_apply(g, duals), smooth::square_zero_apply(g2, duals));
  t.pointwise("(g g2)~ = g~ g2~ (base)", lhs.base, rhs.base, n, tol);
  t.pointwise("(g g2)~ = g~ g2~ (tangent)", SmoothOneForm(lhs.tangent), SmoothOneForm(rhs.tangent), n, tol);
}

using TrialFn = void (*)(Trial&);

TrialFn select(Suite suite, Mode mode) {
  if (mode == Mode::Poly) {
    switch (suite) {
      case Suite::DAxioms: return poly_d_axioms;
      case Suite::SAxioms: return poly_s_axioms;
      case Suite::Calculus: return poly_calculus;
      case Suite::Interchange: return poly_interchange;
      case Suite::Epsilon: return poly_epsilon_suite;
      case Suite::Naturality: return poly_naturality;
      case Suite::LambdaCompat: return nullptr;
      case Suite::Chain: return poly_chain;
      case Suite::Inverses: return poly_inverses;
      case Suite::RotaBaxter: return poly_rota_baxter;
      case Suite::Derivation: return poly_derivation;
    }
    return nullptr;
  }
  switch (suite) {
    case Suite::DAxioms: return smooth_d_axioms;
    case Suite::SAxioms: return smooth_s_axioms;
    case Suite::Calculus: return smooth_calculus;
    case Suite::Interchange: return smooth_interchange;
    case Suite::Epsilon: return smooth_epsilon;
    case Suite::Naturality: return smooth_naturality;
    case Suite::LambdaCompat: return smooth_lambda_compat;
    case Suite::Chain: return smooth_chain;
    case Suite::Inverses: return smooth_inverses;
    case Suite::RotaBaxter: return smooth_rota_baxter;
    case Suite::Derivation: return smooth_derivation;
  }
  return nullptr;
}

Outcome run_trial(TrialFn fn, const Context& ctx, std::size_t index) {
  Trial t(ctx, index);
  try {
    fn(t);
  } catch (const NonConvergence& e) {
    t.mark_inconclusive(e.what());
  }
  return std::move(t).finish();
}

}  // namespace

LawReport run_suite(Suite suite, Mode mode, const TrialConfig& trial, const GenConfig& gen,
                    const SuiteOptions& options) {
  trial.validate();
  gen.validate();
  const TrialFn fn = select(suite, mode);
  if (fn == nullptr) {
    throw std::invalid_argument("suite '" + std::string(to_string(suite)) + "' has no " +
                                std::string(to_string(mode)) + " form");
  }
  const auto start = std::chrono::steady_clock::now();
  const std::size_t count = trial.trials.value_or(default_trials(suite, mode));
  const Context ctx{mode, trial, gen, options};

  std::vector<Outcome> outcomes(count);
  const unsigned hw = trial.threads != 0 ? trial.threads : std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) outcomes[k] = run_trial(fn, ctx, k);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t k = next++; k < count; k = next++) {
            try {
              outcomes[k] = run_trial(fn, ctx, k);
            } catch (...) {
              std::lock_guard lock(error_mutex);
              if (!error) error = std::current_exception();
              next = count;
            }
          }
        });
      }
    }
    if (error) std::rethrow_exception(error);
  }

  LawReport report;
  report.law = std::string(to_string(suite));
  report.mode = mode;
  report.seed = trial.seed;
  report.trials = count;
  for (const Outcome& o : outcomes) {
    report.worst_error = std::max(report.worst_error, o.worst);
    if (o.failed) {
      ++report.failures;
      if (report.counterexamples.size() < kMaxCounterexamples) report.counterexamples.push_back(o.detail);
    } else if (o.inconclusive) {
      ++report.inconclusive;
    }
  }
  if (mode == Mode::Poly && report.failures == 0) report.worst_error = 0.0;
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace cinf::laws
