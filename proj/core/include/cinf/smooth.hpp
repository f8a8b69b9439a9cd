#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cinf/expr.hpp"
#include "cinf/quadrature.hpp"
#include "cinf/sym.hpp"

namespace cinf::smooth {

/// Smooth 1-form Σ f_i dx_i on R^n, i.e. an element of C∞(R^n) ⊗ R^n.
/// Component i is also the i-th coordinate of the corresponding vector field.
class SmoothOneForm {
 public:
  SmoothOneForm() = default;
  explicit SmoothOneForm(std::vector<Expr> components) : components_(std::move(components)) {}

  static SmoothOneForm zero(std::size_t dimension);

  std::size_t dimension() const noexcept { return components_.size(); }
  const std::vector<Expr>& components() const noexcept { return components_; }
  const Expr& operator[](std::size_t i) const { return components_.at(i); }

 private:
  std::vector<Expr> components_;
};

/// Module action f·ω.
SmoothOneForm operator*(const Expr& f, const SmoothOneForm& form);

/// Element of C∞(R^n) ⊗ R^n ⊗ R^n; entry (j, i) is the coefficient of e_j ⊗ e_i.
class SmoothTwoTensor {
 public:
  explicit SmoothTwoTensor(std::size_t dimension)
      : dimension_(dimension), entries_(dimension * dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  const Expr& operator()(std::size_t j, std::size_t i) const { return entries_.at(j * dimension_ + i); }
  Expr& operator()(std::size_t j, std::size_t i) { return entries_.at(j * dimension_ + i); }
  SmoothTwoTensor transposed() const;

 private:
  std::size_t dimension_;
  std::vector<Expr> entries_;
};

/// Element (a, m) of the square-zero extension A ⊕ M with A = C∞(R^n) and
/// M = A^k, the free module of rank k.
struct DualElement {
  Expr base;
  std::vector<Expr> tangent;
};

/// d(f) = Σ ∂f/∂x_i dx_i.
SmoothOneForm differential(const Expr& f, std::size_t dimension);

/// (d ⊗ 1)∘d; entry (j, i) = ∂²f/∂x_j∂x_i.
SmoothTwoTensor second_differential(const Expr& f, std::size_t dimension);

/// d°(ω)(v) = F(v)·v.
Expr coderiving(const SmoothOneForm& form);

/// L(f) = ∇f·x, K(f) = L(f) + f(0), J(f) = L(f) + f. Computing K needs
/// f(0), which may involve quadrature.
Expr degree_op(DegreeOp op, const Expr& f, std::size_t dimension, const QuadConfig& cfg = {});

/// K*(f)(v) = ∫₀¹∫₀¹ ∇f(stv)·v ds dt + f(0) and J*(f)(v) = ∫₀¹ f(tv) dt.
/// The integrals stay symbolic; only f(0) is evaluated.
Expr degree_op_inverse(DegreeOp op, const Expr& f, std::size_t dimension, const QuadConfig& cfg = {});

/// Integral transformation: the line integral of ω along the segment from 0
/// to v, s(ω)(v) = ∫₀¹ F(tv)·v dt. Returned as an unevaluated integral.
Expr line_integral(const SmoothOneForm& form);

/// (s ⊗ 1) on a two-tensor: component i is line_integral(Σ_j T(j, i) e_j).
SmoothOneForm line_integral_first_slot(const SmoothTwoTensor& tensor);

/// Counit e(f) = f(0).
double counit(const Expr& f, std::size_t dimension, const QuadConfig& cfg = {});

/// Quasi-codereliction ε(f) = ∇f(0).
std::vector<double> epsilon(const Expr& f, std::size_t dimension, const QuadConfig& cfg = {});

/// Rota-Baxter operator P_v(f) = s(Σ v_i f dx_i).
Expr rota_baxter(const Expr& f, std::span<const double> v);

/// f ∗ g = f·P_v(g) + P_v(f)·g.
Expr double_product(const Expr& f, const Expr& g, std::span<const double> v);

/// Action of g ∈ C∞(R^k) on k elements of A ⊕ M:
/// (g(a), Σ_i ∂g/∂y_i(a)·m_i).
DualElement square_zero_apply(const Expr& g, std::span<const DualElement> duals);

struct ClosednessReport {
  bool closed = true;
  double worst_asymmetry = 0.0;  ///< max |∂ω_i/∂x_j − ∂ω_j/∂x_i| over samples and pairs
};

/// Samples `points` deterministic points in [-1, 1]^n and compares cross partials.
ClosednessReport is_closed(const SmoothOneForm& form, std::size_t points = 25, double tol = 1e-9,
                           const QuadConfig& cfg = {}, std::uint64_t seed = 0x5eed);

/// Comma-separated component list.
std::string to_string(const SmoothOneForm& form);
/// `(base; tangent1, tangent2, ...)`.
std::string to_string(const DualElement& dual);
/// Parses the `(base; tangent1, ...)` form.
DualElement parse_dual(std::string_view text, std::size_t dimension);

}  // namespace cinf::smooth
