#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "cinf/expr_text.hpp"
#include "cinf/quadrature.hpp"
#include "cinf/smooth.hpp"
#include "cinf/sym.hpp"

namespace {

using namespace cinf;

void BM_PolyMultiply(benchmark::State& state) {
  const Poly a = parse_poly("3/2*x1^3*x2 - x2^2*x3 + 5*x1 + 1/7", 3);
  const Poly b = parse_poly("x1^2 - 2/3*x2*x3^2 + x3^4 - 1", 3);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMultiply);

void BM_PolyIntegral(benchmark::State& state) {
  const sym::PolyOneForm w(parse_poly_list("x1^2*x2^5 + x3, x1^3 - x2*x3, 1/3*x1*x2*x3^2", 3));
  for (auto _ : state) benchmark::DoNotOptimize(sym::integral(w));
}
BENCHMARK(BM_PolyIntegral);

void BM_Quadrature(benchmark::State& state) {
  const QuadConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_unit([](double t) { return std::exp(std::sin(3 * t)); }, cfg));
  }
}
BENCHMARK(BM_Quadrature);

void BM_SmoothLineIntegral(benchmark::State& state) {
  const Expr s = smooth::line_integral(smooth::SmoothOneForm(parse_expr_list("cos(x1)*x2, sin(x1) + x2^2", 2)));
  const std::vector<double> p{0.4, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(s, p));
}
BENCHMARK(BM_SmoothLineIntegral);

void BM_SmoothKInverse(benchmark::State& state) {
  const Expr k = smooth::degree_op_inverse(DegreeOp::K, parse_expr("exp(x1)*sin(x2)", 2), 2);
  const std::vector<double> p{0.4, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(k, p));
}
BENCHMARK(BM_SmoothKInverse);

}  // namespace

BENCHMARK_MAIN();
