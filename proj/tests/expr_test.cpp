#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cinf/errors.hpp"
#include "cinf/expr.hpp"
#include "cinf/expr_text.hpp"
#include "cinf/generators.hpp"

namespace cinf {
namespace {

Expr E(const char* text, std::size_t n) { return parse_expr(text, n); }

double at(const Expr& e, std::vector<double> p) { return evaluate(e, p); }

TEST(Expr, EvaluatePrimitives) {
  EXPECT_DOUBLE_EQ(at(E("sin(x1) + cos(x2)", 2), {0.3, 0.4}), std::sin(0.3) + std::cos(0.4));
  EXPECT_DOUBLE_EQ(at(E("exp(x1)*tanh(x1) - atan(x1)", 1), {0.7}),
                   std::exp(0.7) * std::tanh(0.7) - std::atan(0.7));
  EXPECT_DOUBLE_EQ(at(E("(x1 - 2)^3", 1), {0.5}), -3.375);
}

TEST(Expr, IntegralNodeIsUnitIntervalIntegral) {
  // ∫₀¹ (t·x1)^2 dt = x1²/3
  const Expr e = Expr::integral(0, Expr::power(Expr::param(0) * Expr::var(0), 2));
  EXPECT_NEAR(at(e, {0.9}), 0.27, 1e-15);
}

TEST(Expr, PartialOfPrimitives) {
  const std::vector<double> p{0.4, -0.2};
  EXPECT_NEAR(at(partial(E("sin(x1*x2)", 2), 0, 2), p), -0.2 * std::cos(-0.08), 1e-15);
  EXPECT_NEAR(at(partial(E("tanh(x1)", 1), 0, 1), {0.5}), 1 - std::pow(std::tanh(0.5), 2), 1e-15);
  EXPECT_NEAR(at(partial(E("atan(x1)", 1), 0, 1), {0.5}), 1 / 1.25, 1e-15);
  EXPECT_NEAR(at(partial(E("exp(2*x1)", 1), 0, 1), {0.5}), 2 * std::exp(1.0), 1e-14);
  EXPECT_TRUE(partial(E("x2^2", 2), 0, 2).is_constant(0.0));
}

TEST(Expr, PartialDifferentiatesUnderIntegral) {
  // d/dx1 ∫₀¹ sin(t·x1) dt = ∫₀¹ t cos(t·x1) dt
  const Expr e = Expr::integral(0, Expr::prim(PrimKind::Sin, Expr::param(0) * Expr::var(0)));
  const double x = 0.8;
  const double expected = (x * std::sin(x) + std::cos(x) - 1) / (x * x);
  EXPECT_NEAR(at(partial(e, 0, 1), {x}), expected, 1e-13);
}

TEST(Expr, ClosednessChecks) {
  EXPECT_THROW(require_closed(Expr::param(3), 1), BindingError);
  EXPECT_THROW(require_closed(Expr::var(2), 2), IndexError);
  EXPECT_THROW(require_closed(Expr::integral(1, Expr::integral(1, Expr::param(1))), 1), BindingError);
  EXPECT_NO_THROW(require_closed(Expr::integral(1, Expr::param(1) * Expr::var(0)), 1));
}

TEST(Expr, ScaleVarsRejectsUsedParameter) {
  const Expr e = Expr::integral(0, Expr::param(0) * Expr::var(0));
  EXPECT_THROW(scale_vars(e, 0), BindingError);
  const Expr s = scale_vars(E("x1^2", 1), 5);
  EXPECT_TRUE(uses_param(s, 5));
  EXPECT_DOUBLE_EQ(at(Expr::integral(5, s), {3.0}), 3.0);
}

TEST(Expr, SubstituteRenumbersParameters) {
  // g(y) = ∫₀¹ t·y dt composed with α = ∫₀¹ s·x1 ds: both use id 0.
  const Expr g = Expr::integral(0, Expr::param(0) * Expr::var(0));
  const Expr a = Expr::integral(0, Expr::param(0) * Expr::var(0));
  const Expr c = substitute(g, std::vector<Expr>{a});
  EXPECT_NO_THROW(require_closed(c, 1));
  EXPECT_NEAR(at(c, {2.0}), 0.5, 1e-15);
}

TEST(Expr, SubstituteLinearActsByTranspose) {
  // h = [[1, 2], [3, 4]] (2×2): x1 ↦ x1 + 3 x2, x2 ↦ 2 x1 + 4 x2
  const Matrix h(2, 2, {1, 2, 3, 4});
  const Expr e = substitute_linear(E("x1*x2", 2), h);
  EXPECT_DOUBLE_EQ(at(e, {1.0, 1.0}), 4.0 * 6.0);
  const Matrix hh = h * Matrix::identity(2);
  EXPECT_DOUBLE_EQ(hh(1, 0), 3.0);
}

TEST(Expr, FromPolyAgreesPointwise) {
  const Poly p = parse_poly("1/3*x1^2*x2 - 5/7*x2 + 2", 2);
  const std::vector<double> pt{0.3, -0.9};
  EXPECT_NEAR(at(from_poly(p), pt), evaluate(p, std::span<const double>(pt)), 1e-15);
}

TEST(Expr, SimplifyFoldsConstantsAndDropsDeadIntegrals) {
  EXPECT_TRUE(simplify(E("2*3 - 6", 1)).is_constant(0.0));
  EXPECT_EQ(simplify(E("0*x1 + x1*1", 1)), Expr::var(0));
  const Expr dead = Expr::integral(0, Expr::var(0));
  EXPECT_EQ(simplify(dead), Expr::var(0));
}

TEST(ExprProperty, SimplifyIsIdempotentAndPointwiseEqual) {
  GenConfig cfg;
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng(mix_seed(31, k));
    const std::size_t n = gen_dimension(cfg, rng);
    const Expr raw = gen_expr(cfg, rng, n);
    const Expr s = simplify(raw);
    EXPECT_EQ(simplify(s), s) << to_string(raw);
    const auto p = gen_point(rng, n);
    EXPECT_NEAR(evaluate(s, p), evaluate(raw, p), 1e-12);
  }
}

// Oracle: central differences.
TEST(ExprProperty, PartialMatchesFiniteDifferences) {
  GenConfig cfg;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(mix_seed(32, k));
    const std::size_t n = gen_dimension(cfg, rng);
    const Expr f = gen_expr(cfg, rng, n);
    const auto p = gen_point(rng, n, -0.9, 0.9);
    for (std::size_t i = 0; i < n; ++i) {
      auto hi = p;
      auto lo = p;
      hi[i] += 1e-5;
      lo[i] -= 1e-5;
      const double fd = (evaluate(f, hi) - evaluate(f, lo)) / 2e-5;
      const double sym = evaluate(partial(f, i, n), p);
      EXPECT_LE(std::abs(sym - fd) / std::max(1.0, std::abs(fd)), 1e-5) << to_string(f);
    }
  }
}

TEST(ExprProperty, GeneratorIsDeterministicAndDepthZeroIsALeaf) {
  GenConfig cfg;
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng a(k);
    Rng b(k);
    EXPECT_EQ(gen_expr(cfg, a, 3), gen_expr(cfg, b, 3));
    const Expr leaf = gen_expr(cfg, a, 3, 0);
    EXPECT_TRUE(leaf.is(Expr::Kind::Var) || leaf.is(Expr::Kind::Const)) << to_string(leaf);
  }
}

}  // namespace
}  // namespace cinf
