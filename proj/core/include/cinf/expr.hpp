#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cinf/poly.hpp"
#include "cinf/quadrature.hpp"

namespace cinf {

/// Primitive smooth functions. All are total and smooth on the whole real line.
enum class PrimKind { Sin, Cos, Exp, Tanh, Atan };

const char* to_string(PrimKind kind) noexcept;
double apply(PrimKind kind, double x) noexcept;

/// Identifier of a parameter bound by an enclosing integral node.
using ParamId = std::uint32_t;

/// Immutable smooth expression over variables x_0 .. x_{n-1}.
///
/// Nodes are shared; copying an Expr is cheap. Integral(t, body) denotes
/// ∫₀¹ body dt where t occurs in body as Param(t).
class Expr {
 public:
  enum class Kind { Var, Param, Const, Sum, Product, Power, Negate, Prim, Integral };

  /// The constant 0.
  Expr();

  static Expr var(std::size_t index);
  static Expr param(ParamId id);
  static Expr constant(double value);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, unsigned exponent);
  static Expr negate(Expr operand);
  static Expr prim(PrimKind kind, Expr argument);
  static Expr integral(ParamId id, Expr body);

  Kind kind() const noexcept;
  bool is(Kind k) const noexcept { return kind() == k; }
  bool is_constant(double value) const noexcept;

  std::size_t var_index() const;
  ParamId param_id() const;
  double value() const;
  unsigned exponent() const;
  PrimKind prim_kind() const;

  /// Terms of a Sum, factors of a Product; the single child otherwise.
  std::span<const Expr> operands() const noexcept;
  /// Power base, Negate operand, Prim argument or Integral body.
  const Expr& operand() const;

  /// True if x_index occurs anywhere below this node.
  bool depends_on(std::size_t index) const noexcept;
  /// One past the largest variable index; 0 for variable-free expressions.
  std::size_t var_bound() const noexcept;
  /// One past the largest parameter id occurring or bound; a fresh id.
  ParamId param_bound() const noexcept;
  bool has_integral() const noexcept;
  std::size_t node_count() const noexcept;

  friend bool operator==(const Expr& a, const Expr& b);

  friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b) { return sum({a, negate(b)}); }
  friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
  friend Expr operator-(const Expr& a) { return negate(a); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Node node);

  std::shared_ptr<const Node> node_;
};

/// Throws BindingError unless every Param is bound by an enclosing Integral
/// and no id is bound twice along a path; throws IndexError if a variable
/// index is >= dimension.
void require_closed(const Expr& e, std::size_t dimension);

bool uses_param(const Expr& e, ParamId id);

/// Value at point. Integral nodes are integrated with cfg; a failure to
/// converge throws NonConvergence.
double evaluate(const Expr& e, std::span<const double> point, const QuadConfig& cfg = {});

/// Symbolic ∂e/∂x_index, simplified. Integrals differentiate under the sign.
Expr partial(const Expr& e, std::size_t index, std::size_t dimension);

/// Dense real matrix, row-major.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Action of a linear map h: R^n -> R^m (an m×n matrix) on smooth functions:
/// g ↦ g∘hᵀ. Variable j of g becomes Σ_i h(i, j)·x_i over the m new variables.
Expr substitute_linear(const Expr& g, const Matrix& h);

/// Composition g∘(α_0, ..., α_{m-1}). Parameters of the α are renumbered so
/// that no id is bound twice along any path.
Expr substitute(const Expr& g, std::span<const Expr> alpha);

/// Replaces every x_i by t·x_i where t = Param(id). Throws BindingError if id
/// already occurs in e.
Expr scale_vars(const Expr& e, ParamId id);

/// Inclusion of polynomials into smooth functions. Coefficients are rounded to double.
Expr from_poly(const Poly& p);

/// Pointwise-equal rewrite: constant folding, 0/1 elimination, flattening of
/// nested sums and products, sign normalisation, and merging of integrals
/// over the same parameter. Idempotent.
Expr simplify(const Expr& e);

}  // namespace cinf
