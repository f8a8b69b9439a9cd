#include <gtest/gtest.h>

#include <vector>

#include "cinf/expr_text.hpp"
#include "cinf/generators.hpp"
#include "cinf/sym.hpp"

namespace cinf::sym {
namespace {

Poly P(const char* text, std::size_t n) { return parse_poly(text, n); }
PolyOneForm W(const char* text, std::size_t n) { return PolyOneForm(parse_poly_list(text, n)); }

// Independent oracle for the integral transformation: restrict ω to the ray
// t ↦ t·v, giving a univariate polynomial in t, and integrate over [0, 1]
// term by term.
Rational ray_integral(const PolyOneForm& w, const std::vector<Rational>& v) {
  const std::size_t n = w.dimension();
  std::vector<Poly> ray;
  for (std::size_t i = 0; i < n; ++i) ray.push_back(Poly::term(v[i], Monomial(std::vector<unsigned>{1})));
  Poly integrand(1);
  for (std::size_t i = 0; i < n; ++i) integrand += v[i] * substitute(w[i], ray);
  Rational out = 0;
  for (const auto& [m, c] : integrand.terms()) out += c / Rational(m.exponent(0) + 1);
  return out;
}

TEST(Sym, DifferentialOfMonomial) {
  EXPECT_EQ(differential(P("x1^3*x2^2*x3", 3)), W("3*x1^2*x2^2*x3, 2*x1^3*x2*x3, x1^3*x2^2", 3));
  EXPECT_EQ(differential(P("7", 2)), PolyOneForm(2));
  EXPECT_EQ(differential(P("x2", 2)), W("0, 1", 2));
}

TEST(Sym, Coderiving) {
  EXPECT_EQ(coderiving(W("x2, 1", 2)), P("x1*x2 + x2", 2));
  EXPECT_EQ(coderiving(PolyOneForm(3)), Poly(3));
}

TEST(Sym, DegreeOperators) {
  EXPECT_EQ(degree_op(DegreeOp::K, P("x1^2*x2", 2)), P("3*x1^2*x2", 2));
  EXPECT_EQ(degree_op(DegreeOp::K, P("5", 2)), P("5", 2));
  EXPECT_EQ(degree_op(DegreeOp::J, P("x1^2*x2", 2)), P("4*x1^2*x2", 2));
  EXPECT_EQ(degree_op(DegreeOp::L, P("x1^2*x2 + 5", 2)), P("3*x1^2*x2", 2));
  EXPECT_EQ(degree_op(DegreeOp::J, P("5", 2)), P("5", 2));
}

TEST(Sym, DegreeInverses) {
  EXPECT_EQ(degree_op_inverse(DegreeOp::K, P("3*x1^2*x2 + 5", 2)), P("x1^2*x2 + 5", 2));
  EXPECT_EQ(degree_op_inverse(DegreeOp::J, P("x1 + 1", 1)), P("1/2*x1 + 1", 1));
  EXPECT_THROW(degree_op_inverse(DegreeOp::L, P("x1", 1)), std::invalid_argument);
}

TEST(Sym, IntegralReproducesWorkedExample) {
  EXPECT_EQ(to_string(integral(W("x1^2*x2^5, x1^3", 2))), "1/8*x1^3*x2^5 + 1/4*x1^3*x2");
}

TEST(Sym, IntegralOfConstantForm) {
  EXPECT_EQ(integral(W("1, 0, 0", 3)), P("x1", 3));
  EXPECT_EQ(integral(W("0, 0, 1", 3)), P("x3", 3));
  EXPECT_EQ(integral(PolyOneForm(2)), Poly(2));
}

TEST(Sym, IntegralFirstSlotAndTransposition) {
  PolyTwoTensor t(2);
  t(0, 1) = P("x1", 2);
  const PolyTwoTensor tt = t.transposed();
  EXPECT_EQ(tt(1, 0), P("x1", 2));
  EXPECT_TRUE(tt(0, 1).is_zero());
  // component 1 of (s ⊗ 1)(T) is s(x1 dx1) = x1^2/2
  EXPECT_EQ(integral_first_slot(t), W("0, 1/2*x1^2", 2));
}

TEST(Sym, SecondDifferentialIsHessian) {
  const PolyTwoTensor h = second_differential(P("x1^2*x2", 2));
  EXPECT_EQ(h(0, 0), P("2*x2", 2));
  EXPECT_EQ(h(0, 1), P("2*x1", 2));
  EXPECT_EQ(h(1, 0), P("2*x1", 2));
  EXPECT_TRUE(h(1, 1).is_zero());
}

TEST(Sym, RotaBaxterInOneVariableIsIntegrationFromZero) {
  const std::vector<Rational> one{Rational(1)};
  EXPECT_EQ(rota_baxter(P("3*x1^2 + 1", 1), one), P("x1^3 + x1", 1));
  EXPECT_EQ(double_product(P("x1", 1), P("x1", 1), one), P("x1^3", 1));
  EXPECT_EQ(rota_baxter(Poly(1), one), Poly(1));
}

TEST(Sym, FormDimensionMismatch) {
  EXPECT_THROW(PolyOneForm(std::vector<Poly>{Poly(1), Poly(1)}), std::invalid_argument);
}

TEST(Sym, OneFormText) { EXPECT_EQ(to_string(W("x2, 1/2", 2)), "x2, 1/2"); }

TEST(SymProperty, IntegralMatchesRayIntegralOracle) {
  GenConfig cfg;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(mix_seed(21, k));
    const std::size_t n = gen_dimension(cfg, rng);
    const PolyOneForm w = gen_poly_oneform(cfg, rng, n);
    const auto v = gen_rational_vector(cfg, rng, n);
    EXPECT_EQ(evaluate(integral(w), v), ray_integral(w, v)) << to_string(w);
  }
}

TEST(SymProperty, IntegralFactorsThroughDegreeInverses) {
  GenConfig cfg;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(mix_seed(22, k));
    const std::size_t n = gen_dimension(cfg, rng);
    const PolyOneForm w = gen_poly_oneform(cfg, rng, n);
    const Poly s = integral(w);
    EXPECT_EQ(s, degree_op_inverse(DegreeOp::K, coderiving(w)));
    std::vector<Poly> jw;
    for (const Poly& c : w.components()) jw.push_back(degree_op_inverse(DegreeOp::J, c));
    EXPECT_EQ(s, coderiving(PolyOneForm(std::move(jw))));
  }
}

TEST(SymProperty, FundamentalTheoremAndPoincare) {
  GenConfig cfg;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(mix_seed(23, k));
    const std::size_t n = gen_dimension(cfg, rng);
    const Poly p = gen_poly(cfg, rng, n);
    const PolyOneForm dp = differential(p);
    EXPECT_EQ(integral(dp) + Poly::constant(n, p.constant_term()), p);
    EXPECT_EQ(differential(integral(dp)), dp);
  }
}

TEST(SymProperty, CommutativeRotaBaxterAlgebra) {
  GenConfig cfg;
  cfg.max_degree = 4;
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng rng(mix_seed(24, k));
    const std::size_t n = gen_dimension(cfg, rng);
    const auto v = gen_rational_vector(cfg, rng, n);
    const Poly a = gen_poly(cfg, rng, n);
    const Poly b = gen_poly(cfg, rng, n);
    const Poly pa = rota_baxter(a, v);
    const Poly pb = rota_baxter(b, v);
    EXPECT_EQ(pa * pb, rota_baxter(a * pb, v) + rota_baxter(pa * b, v));
    EXPECT_EQ(rota_baxter(double_product(a, b, v), v), pa * pb);
  }
}

}  // namespace
}  // namespace cinf::sym
