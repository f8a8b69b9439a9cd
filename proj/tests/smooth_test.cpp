#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cinf/errors.hpp"
#include "cinf/expr_text.hpp"
#include "cinf/generators.hpp"
#include "cinf/smooth.hpp"

namespace cinf::smooth {
namespace {

Expr E(const char* text, std::size_t n) { return parse_expr(text, n); }
SmoothOneForm W(const char* text, std::size_t n) { return SmoothOneForm(parse_expr_list(text, n)); }
double at(const Expr& e, std::vector<double> p) { return evaluate(e, p); }

TEST(Smooth, Differential) {
  const SmoothOneForm d = differential(E("sin(x1)", 1), 1);
  EXPECT_EQ(d[0], E("cos(x1)", 1));
  const SmoothOneForm d0 = differential(Expr::constant(4.0), 3);
  for (const Expr& c : d0.components()) EXPECT_TRUE(c.is_constant(0.0));
  const SmoothOneForm dx = differential(Expr::var(1), 3);
  EXPECT_TRUE(dx[0].is_constant(0.0));
  EXPECT_TRUE(dx[1].is_constant(1.0));
}

TEST(Smooth, Coderiving) {
  EXPECT_DOUBLE_EQ(at(coderiving(W("cos(x1)", 1)), {0.5}), std::cos(0.5) * 0.5);
  EXPECT_TRUE(coderiving(SmoothOneForm::zero(2)).is_constant(0.0));
}

TEST(Smooth, DegreeOperators) {
  EXPECT_DOUBLE_EQ(at(degree_op(DegreeOp::L, E("x1^2", 1), 1), {0.7}), 2 * 0.49);
  EXPECT_DOUBLE_EQ(at(degree_op(DegreeOp::K, E("sin(x1)", 1), 1), {0.7}), std::cos(0.7) * 0.7);
  EXPECT_DOUBLE_EQ(at(degree_op(DegreeOp::K, E("x1 + 3", 1), 1), {0.7}), 3.7);
  EXPECT_TRUE(degree_op(DegreeOp::J, Expr::constant(5.0), 2).is_constant(5.0));
}

TEST(Smooth, DegreeInversesClosedForms) {
  // ∫∫ 4 s t v² = v²
  EXPECT_NEAR(at(degree_op_inverse(DegreeOp::K, E("2*x1^2", 1), 1), {0.6}), 0.36, 1e-14);
  EXPECT_NEAR(at(degree_op_inverse(DegreeOp::J, E("x1^2", 1), 1), {0.6}), 0.12, 1e-14);
  EXPECT_THROW(degree_op_inverse(DegreeOp::L, E("x1", 1), 1), std::invalid_argument);
}

TEST(Smooth, JInverseOfJIsIdentity) {
  const Expr f = E("x1^2", 1);
  const Expr round = degree_op_inverse(DegreeOp::J, degree_op(DegreeOp::J, f, 1), 1);
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    const auto p = gen_point(rng, 1);
    EXPECT_NEAR(evaluate(round, p), evaluate(f, p), 1e-9);
  }
}

TEST(Smooth, LineIntegralOfCosineIsSine) {
  const Expr s = line_integral(W("cos(x1)", 1));
  for (double v : {-1.5, -0.3, 0.0, 0.8, 2.0}) EXPECT_NEAR(at(s, {v}), std::sin(v), 1e-14);
}

TEST(Smooth, LineIntegralOfConstantForm) {
  const Expr s = line_integral(W("0, 1", 2));
  EXPECT_NEAR(at(s, {0.3, -0.7}), -0.7, 1e-15);
}

TEST(Smooth, LineIntegralMatchesWorkedPolynomialExample) {
  const Expr s = line_integral(W("x1^2*x2^5, x1^3", 2));
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const auto v = gen_point(rng, 2);
    const double expected = std::pow(v[0], 3) * std::pow(v[1], 5) / 8 + std::pow(v[0], 3) * v[1] / 4;
    EXPECT_NEAR(evaluate(s, v), expected, 1e-9);
  }
}

TEST(Smooth, CounitAndEpsilon) {
  EXPECT_DOUBLE_EQ(counit(E("sin(x1) + 3", 1), 1), 3.0);
  const Poly p = parse_poly("x1*x2 - 7/2", 2);
  EXPECT_DOUBLE_EQ(counit(from_poly(p), 2), p.constant_term().get_d());
  EXPECT_EQ(epsilon(E("sin(x1) + x1*x2", 2), 2), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(epsilon(Expr::constant(2.0), 3), (std::vector<double>(3, 0.0)));
  EXPECT_EQ(epsilon(Expr::var(2), 3), (std::vector<double>{0.0, 0.0, 1.0}));
}

TEST(Smooth, EpsilonMatchesFiniteDifferencesAtOrigin) {
  const Expr f = E("exp(x1)*cos(x2) + atan(x1*x2 + x2)", 2);
  const auto eps = epsilon(f, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<double> hi(2, 0.0);
    std::vector<double> lo(2, 0.0);
    hi[i] = 1e-6;
    lo[i] = -1e-6;
    EXPECT_NEAR(eps[i], (evaluate(f, hi) - evaluate(f, lo)) / 2e-6, 1e-8);
  }
}

TEST(Smooth, RotaBaxter) {
  const std::vector<double> one{1.0};
  const Expr p = rota_baxter(E("cos(x1)", 1), one);
  for (double x : {-2.0, 0.5, 1.7}) EXPECT_NEAR(at(p, {x}), std::sin(x), 1e-9);
  EXPECT_TRUE(rota_baxter(Expr::constant(0.0), one).is_constant(0.0));
  EXPECT_NEAR(at(double_product(E("x1", 1), E("x1", 1), one), {0.9}), 0.729, 1e-14);
  EXPECT_THROW(rota_baxter(E("x2", 2), one), DimensionError);
}

TEST(Smooth, RotaBaxterIdentityOnRealLine) {
  const std::vector<double> one{1.0};
  const Expr f = E("exp(x1)", 1);
  const Expr g = E("sin(2*x1) + x1", 1);
  const Expr pf = rota_baxter(f, one);
  const Expr pg = rota_baxter(g, one);
  const Expr rhs = rota_baxter(f * pg, one) + rota_baxter(pf * g, one);
  for (double x : {-1.0, -0.2, 0.4, 1.0}) EXPECT_NEAR(at(pf * pg, {x}), at(rhs, {x}), 1e-8);
}

TEST(Smooth, SquareZeroApply) {
  const DualElement x{Expr::var(0), {Expr::constant(1.0)}};
  const DualElement r = square_zero_apply(E("x1^2", 1), std::span(&x, 1));
  EXPECT_DOUBLE_EQ(at(r.base, {0.3}), 0.09);
  EXPECT_DOUBLE_EQ(at(r.tangent[0], {0.3}), 0.6);

  const std::vector<DualElement> two{{E("sin(x1)", 1), {E("x1", 1), E("2", 1)}},
                                     {E("x1^3", 1), {E("1", 1), E("x1", 1)}}};
  const DualElement proj = square_zero_apply(E("x1", 2), two);
  EXPECT_DOUBLE_EQ(at(proj.base, {0.4}), std::sin(0.4));
  EXPECT_DOUBLE_EQ(at(proj.tangent[1], {0.4}), 2.0);
  const DualElement sum = square_zero_apply(E("x1 + x2", 2), two);
  EXPECT_DOUBLE_EQ(at(sum.tangent[0], {0.4}), 1.4);
  EXPECT_DOUBLE_EQ(at(sum.tangent[1], {0.4}), 2.4);
  EXPECT_THROW(square_zero_apply(E("x1*x2", 2), std::span(&x, 1)), DimensionError);
}

TEST(Smooth, IsClosed) {
  const ClosednessReport sym = is_closed(W("x2, x1", 2));
  EXPECT_TRUE(sym.closed);
  EXPECT_EQ(sym.worst_asymmetry, 0.0);
  const ClosednessReport rot = is_closed(W("x2, -x1", 2));
  EXPECT_FALSE(rot.closed);
  EXPECT_NEAR(rot.worst_asymmetry, 2.0, 1e-9);
  EXPECT_TRUE(is_closed(differential(E("sin(x1*x2)*exp(x3)", 3), 3)).closed);
}

TEST(Smooth, DualTextRoundTrip) {
  const DualElement d = parse_dual("(x1^2; 2*x1, sin(x2))", 2);
  EXPECT_EQ(d.base, E("x1^2", 2));
  ASSERT_EQ(d.tangent.size(), 2u);
  EXPECT_EQ(to_string(d), "(x1^2; 2*x1, sin(x2))");
  EXPECT_THROW(parse_dual("x1; 1", 1), ParseError);
  try {
    parse_dual("(x1; y)", 1);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 6u);
  }
}

TEST(SmoothProperty, FundamentalTheoremAndPoincare) {
  GenConfig cfg;
  for (std::uint64_t k = 0; k < 20; ++k) {
    Rng rng(mix_seed(51, k));
    const std::size_t n = gen_dimension(cfg, rng);
    const Expr f = gen_expr(cfg, rng, n);
    const SmoothOneForm df = differential(f, n);
    const Expr s = line_integral(df);
    const SmoothOneForm ds = differential(s, n);
    const double f0 = counit(f, n);
    for (int j = 0; j < 5; ++j) {
      const auto v = gen_point(rng, n);
      EXPECT_NEAR(evaluate(s, v) + f0, evaluate(f, v), 1e-8) << to_string(f);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(evaluate(ds[i], v), evaluate(df[i], v), 1e-7);
    }
  }
}

}  // namespace
}  // namespace cinf::smooth
