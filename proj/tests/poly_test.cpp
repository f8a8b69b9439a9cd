#include <gtest/gtest.h>

#include <vector>

#include "cinf/expr_text.hpp"
#include "cinf/generators.hpp"
#include "cinf/poly.hpp"

namespace cinf {
namespace {

Poly P(const char* text, std::size_t n) { return parse_poly(text, n); }

TEST(Poly, CanonicalTextOrdersByDegreeThenLex) {
  EXPECT_EQ(to_string(P("1/4*x1^3*x2 + 3/8*x1^3*x2^5", 2)), "3/8*x1^3*x2^5 + 1/4*x1^3*x2");
  EXPECT_EQ(to_string(P("x2 + x1 + 1", 2)), "x1 + x2 + 1");
  EXPECT_EQ(to_string(P("-x1 - 2*x2", 2)), "-x1 - 2*x2");
  EXPECT_EQ(to_string(Poly(3)), "0");
  EXPECT_EQ(to_string(P("0.25*x1", 1)), "1/4*x1");
}

TEST(Poly, ZeroCoefficientsAreDropped) {
  Poly p = P("x1 + x2", 2);
  p -= Poly::variable(2, 0);
  EXPECT_EQ(p, Poly::variable(2, 1));
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Poly, DegreeAndConstantTerm) {
  const Poly p = P("x1^2*x2^3 + 7/2", 2);
  EXPECT_EQ(p.degree(), 5);
  EXPECT_EQ(p.constant_term(), make_rational(7, 2));
  EXPECT_EQ(p.coefficient(Monomial(std::vector<unsigned>{2, 3})), Rational(1));
  EXPECT_EQ(p.coefficient(Monomial(std::vector<unsigned>{1, 0})), Rational(0));
}

TEST(Poly, DimensionMismatchThrows) {
  EXPECT_THROW(Poly::variable(2, 0) + Poly::variable(3, 0), std::invalid_argument);
}

TEST(Poly, EvaluateExactAndFloating) {
  const Poly p = P("1/8*x1^3*x2^5 + 1/4*x1^3*x2", 2);
  const std::vector<Rational> q{make_rational(1, 2), Rational(2)};
  // 1/8 * 1/8 * 32 + 1/4 * 1/8 * 2 = 1/2 + 1/16
  EXPECT_EQ(evaluate(p, q), make_rational(9, 16));
  const std::vector<double> d{0.5, 2.0};
  EXPECT_DOUBLE_EQ(evaluate(p, d), 0.5625);
}

TEST(Poly, PartialOfMonomial) {
  EXPECT_EQ(partial(P("x1^3*x2^2*x3", 3), 1), P("2*x1^3*x2*x3", 3));
  EXPECT_EQ(partial(P("5", 2), 0), Poly(2));
}

TEST(Poly, SubstituteExpands) {
  // (y1 + y2)^2 at y1 = x1 - x2, y2 = x2
  const Poly g = P("x1^2 + 2*x1*x2 + x2^2", 2);
  const std::vector<Poly> a{P("x1 - x2", 2), P("x2", 2)};
  EXPECT_EQ(substitute(g, a), P("x1^2", 2));
}

TEST(Poly, SubstituteChangesDimension) {
  const Poly g = P("x1*x2", 2);
  const std::vector<Poly> a{P("x1", 1), P("x1 + 1", 1)};
  EXPECT_EQ(substitute(g, a), P("x1^2 + x1", 1));
}

TEST(Poly, HomogeneousComponentsSumToInput) {
  const Poly p = P("x1^2 + 3*x1*x2 + x2 + 4", 2);
  const auto parts = homogeneous_components(p);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts.at(0), P("4", 2));
  EXPECT_EQ(parts.at(1), P("x2", 2));
  EXPECT_EQ(parts.at(2), P("x1^2 + 3*x1*x2", 2));
}

TEST(Poly, PowMatchesRepeatedProduct) {
  const Poly p = P("x1 - 2*x2 + 1/3", 2);
  EXPECT_EQ(pow(p, 3), p * p * p);
  EXPECT_EQ(pow(p, 0), Poly::constant(2, 1));
}

// Ring laws over random inputs.
TEST(PolyProperty, RingLaws) {
  GenConfig cfg;
  cfg.max_degree = 4;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(mix_seed(11, k));
    const std::size_t n = gen_dimension(cfg, rng);
    const Poly p = gen_poly(cfg, rng, n);
    const Poly q = gen_poly(cfg, rng, n);
    const Poly r = gen_poly(cfg, rng, n);
    const Poly one = Poly::constant(n, 1);
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_EQ(p * one, p);
    EXPECT_EQ(p + Poly(n), p);
    EXPECT_TRUE((p - p).is_zero());
  }
}

TEST(PolyProperty, PrintParseRoundTrip) {
  GenConfig cfg;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(mix_seed(12, k));
    const std::size_t n = gen_dimension(cfg, rng);
    const Poly p = gen_poly(cfg, rng, n);
    EXPECT_EQ(parse_poly(to_string(p), n), p) << to_string(p);
  }
}

TEST(PolyProperty, GeneratedDegreeIsBounded) {
  GenConfig cfg;
  cfg.max_degree = 3;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(mix_seed(13, k));
    EXPECT_LE(gen_poly(cfg, rng, 3).degree(), 3);
  }
}

}  // namespace
}  // namespace cinf
