#include "cinf/generators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cinf {

void GenConfig::validate() const {
  if (min_dimension == 0 || max_dimension < min_dimension) {
    throw std::invalid_argument("dimension range must satisfy 1 <= min <= max");
  }
  if (max_terms == 0) throw std::invalid_argument("max_terms must be positive");
  if (max_numerator <= 0 || max_denominator == 0) {
    throw std::invalid_argument("coefficient bounds must be positive");
  }
  if (!(coefficient_bound > 0.0) || !(value_bound >= 1.0)) {
    throw std::invalid_argument("coefficient_bound must be positive and value_bound at least 1");
  }
  const double total = std::accumulate(prim_weights.begin(), prim_weights.end(), 0.0);
  for (double w : prim_weights) {
    if (w < 0.0) throw std::invalid_argument("primitive weights must be non-negative");
  }
  if (!(total > 0.0)) throw std::invalid_argument("at least one primitive weight must be positive");
}

std::size_t gen_dimension(const GenConfig& cfg, Rng& rng) {
  return static_cast<std::size_t>(rng.uniform_int(static_cast<long>(cfg.min_dimension),
                                                  static_cast<long>(cfg.max_dimension)));
}

Rational gen_rational(const GenConfig& cfg, Rng& rng) {
  long num = rng.uniform_int(1, cfg.max_numerator);
  if (rng.chance(0.5)) num = -num;
  const auto den = static_cast<unsigned long>(rng.uniform_int(1, static_cast<long>(cfg.max_denominator)));
  return make_rational(num, den);
}

std::vector<Rational> gen_rational_vector(const GenConfig& cfg, Rng& rng, std::size_t length) {
  std::vector<Rational> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(gen_rational(cfg, rng));
  return out;
}

Poly gen_poly(const GenConfig& cfg, Rng& rng, std::size_t dimension) {
  Poly p(dimension);
  const auto terms = rng.uniform_int(0, cfg.max_terms);
  for (long t = 0; t < terms; ++t) {
    std::vector<unsigned> exponents(dimension, 0);
    const auto degree = rng.uniform_int(0, cfg.max_degree);
    for (long k = 0; k < degree; ++k) ++exponents[rng.index(dimension)];
    p.add_term(Monomial(std::move(exponents)), gen_rational(cfg, rng));
  }
  return p;
}

sym::PolyOneForm gen_poly_oneform(const GenConfig& cfg, Rng& rng, std::size_t dimension) {
  std::vector<Poly> components;
  components.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) components.push_back(gen_poly(cfg, rng, dimension));
  return sym::PolyOneForm(std::move(components));
}

sym::PolyTwoTensor gen_poly_twotensor(const GenConfig& cfg, Rng& rng, std::size_t dimension) {
  sym::PolyTwoTensor out(dimension);
  for (std::size_t j = 0; j < dimension; ++j)
    for (std::size_t i = 0; i < dimension; ++i) out(j, i) = gen_poly(cfg, rng, dimension);
  return out;
}

namespace {

// An expression with an upper bound on |value| over [-1, 1]^n.
struct Bounded {
  Expr expr;
  double bound;
};

double prim_bound(PrimKind kind, double arg_bound) {
  switch (kind) {
    case PrimKind::Exp: return std::exp(arg_bound);
    case PrimKind::Atan: return std::atan(arg_bound);
    default: return 1.0;
  }
}

template <std::size_t N>
std::size_t pick_weighted(Rng& rng, const std::array<double, N>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double r = rng.unit() * total;
  for (std::size_t k = 0; k < N; ++k) {
    if (r < weights[k]) return k;
    r -= weights[k];
  }
  return N - 1;
}

class ExprGenerator {
 public:
  ExprGenerator(const GenConfig& cfg, Rng& rng, std::size_t dimension)
      : cfg_(cfg), rng_(rng), dimension_(dimension) {}

  Bounded node(unsigned depth) {
    if (depth == 0 || rng_.chance(0.15)) return leaf();
    // sum, product, power, negate, primitive
    static constexpr std::array<double, 5> kOpWeights{3.0, 3.0, 1.0, 0.5, 2.5};
    Bounded out = [&]() -> Bounded {
      switch (pick_weighted(rng_, kOpWeights)) {
        case 0: {
          std::vector<Expr> terms;
          double bound = 0.0;
          const auto count = rng_.uniform_int(2, 3);
          for (long k = 0; k < count; ++k) {
            Bounded t = node(depth - 1);
            bound += t.bound;
            terms.push_back(std::move(t.expr));
          }
          return {Expr::sum(std::move(terms)), bound};
        }
        case 1: {
          Bounded a = node(depth - 1);
          Bounded b = node(depth - 1);
          return {a.expr * b.expr, a.bound * b.bound};
        }
        case 2: {
          Bounded base = node(depth - 1);
          const auto k = static_cast<unsigned>(rng_.uniform_int(2, 3));
          return {Expr::power(base.expr, k), std::pow(base.bound, k)};
        }
        case 3: {
          Bounded a = node(depth - 1);
          return {Expr::negate(a.expr), a.bound};
        }
        default: {
          const auto kind = static_cast<PrimKind>(pick_weighted(rng_, cfg_.prim_weights));
          Bounded a = node(depth - 1);
          if (kind == PrimKind::Exp && a.bound > 2.0) a = clamp(std::move(a));
          return {Expr::prim(kind, a.expr), prim_bound(kind, a.bound)};
        }
      }
    }();
    if (out.bound > cfg_.value_bound) out = clamp(std::move(out));
    return out;
  }

 private:
  Bounded leaf() {
    if (rng_.chance(0.6)) return {Expr::var(rng_.index(dimension_)), 1.0};
    const double c = rng_.uniform(-cfg_.coefficient_bound, cfg_.coefficient_bound);
    return {Expr::constant(c), std::abs(c)};
  }

  // Wraps in sin, cos or tanh, all bounded by 1.
  Bounded clamp(Bounded b) {
    static constexpr std::array<PrimKind, 3> kBounded{PrimKind::Sin, PrimKind::Cos, PrimKind::Tanh};
    return {Expr::prim(kBounded[rng_.index(kBounded.size())], std::move(b.expr)), 1.0};
  }

  const GenConfig& cfg_;
  Rng& rng_;
  std::size_t dimension_;
};

}  // namespace

Expr gen_expr(const GenConfig& cfg, Rng& rng, std::size_t dimension, unsigned depth) {
  if (dimension == 0) throw std::invalid_argument("expressions need dimension >= 1");
  return simplify(ExprGenerator(cfg, rng, dimension).node(depth).expr);
}

Expr gen_expr(const GenConfig& cfg, Rng& rng, std::size_t dimension) {
  return gen_expr(cfg, rng, dimension, cfg.max_depth);
}

smooth::SmoothOneForm gen_oneform(const GenConfig& cfg, Rng& rng, std::size_t dimension) {
  std::vector<Expr> components;
  components.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) components.push_back(gen_expr(cfg, rng, dimension));
  return smooth::SmoothOneForm(std::move(components));
}

smooth::SmoothTwoTensor gen_twotensor(const GenConfig& cfg, Rng& rng, std::size_t dimension) {
  smooth::SmoothTwoTensor out(dimension);
  for (std::size_t j = 0; j < dimension; ++j)
    for (std::size_t i = 0; i < dimension; ++i) out(j, i) = gen_expr(cfg, rng, dimension);
  return out;
}

Matrix gen_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
  return m;
}

std::vector<double> gen_point(Rng& rng, std::size_t dimension, double lo, double hi) {
  std::vector<double> p(dimension);
  for (double& x : p) x = rng.uniform(lo, hi);
  return p;
}

}  // namespace cinf
