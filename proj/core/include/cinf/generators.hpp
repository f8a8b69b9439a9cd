#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "cinf/expr.hpp"
#include "cinf/poly.hpp"
#include "cinf/random.hpp"
#include "cinf/smooth.hpp"
#include "cinf/sym.hpp"

namespace cinf {

/// Bounds for the random generators. Weights are relative, not normalised.
struct GenConfig {
  std::size_t min_dimension = 1;
  std::size_t max_dimension = 3;
  unsigned max_depth = 5;
  unsigned max_degree = 6;
  unsigned max_terms = 6;
  /// Indexed by PrimKind: sin, cos, exp, tanh, atan.
  std::array<double, 5> prim_weights{1.0, 1.0, 0.5, 1.0, 1.0};
  /// Smooth constants are drawn from [-coefficient_bound, coefficient_bound].
  double coefficient_bound = 1.0;
  /// A generated subexpression whose magnitude bound on [-1, 1]^n exceeds
  /// this is wrapped in a bounded primitive.
  double value_bound = 4.0;
  /// Polynomial coefficients are p/q with 1 <= |p| <= max_numerator, 1 <= q <= max_denominator.
  long max_numerator = 5;
  unsigned long max_denominator = 4;

  /// Throws std::invalid_argument on a non-positive or inverted bound.
  void validate() const;
};

std::size_t gen_dimension(const GenConfig& cfg, Rng& rng);

/// Nonzero rational with the configured numerator and denominator bounds.
Rational gen_rational(const GenConfig& cfg, Rng& rng);
std::vector<Rational> gen_rational_vector(const GenConfig& cfg, Rng& rng, std::size_t length);

/// At most max_terms terms, each of total degree <= max_degree.
Poly gen_poly(const GenConfig& cfg, Rng& rng, std::size_t dimension);
sym::PolyOneForm gen_poly_oneform(const GenConfig& cfg, Rng& rng, std::size_t dimension);
sym::PolyTwoTensor gen_poly_twotensor(const GenConfig& cfg, Rng& rng, std::size_t dimension);

/// Closed expression of depth <= max_depth built from the primitive set.
Expr gen_expr(const GenConfig& cfg, Rng& rng, std::size_t dimension);
/// Depth exactly bounded by `depth`; depth 0 yields a variable or a constant.
Expr gen_expr(const GenConfig& cfg, Rng& rng, std::size_t dimension, unsigned depth);
smooth::SmoothOneForm gen_oneform(const GenConfig& cfg, Rng& rng, std::size_t dimension);
smooth::SmoothTwoTensor gen_twotensor(const GenConfig& cfg, Rng& rng, std::size_t dimension);

/// Entries uniform in [-1, 1].
Matrix gen_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// Point uniform in [lo, hi]^dimension.
std::vector<double> gen_point(Rng& rng, std::size_t dimension, double lo = -1.0, double hi = 1.0);

}  // namespace cinf
