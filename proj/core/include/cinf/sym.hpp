#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cinf/poly.hpp"

namespace cinf {

/// The three degree operators built from d and d°: L = d°∘d, K = L plus
/// projection onto the constant, J = L plus identity.
enum class DegreeOp { L, K, J };

const char* to_string(DegreeOp op) noexcept;

namespace sym {

/// Element of Sym(R^n) ⊗ R^n. Component i is the coefficient of dx_i.
class PolyOneForm {
 public:
  explicit PolyOneForm(std::size_t dimension);
  explicit PolyOneForm(std::vector<Poly> components);

  std::size_t dimension() const noexcept { return components_.size(); }
  const std::vector<Poly>& components() const noexcept { return components_; }
  const Poly& operator[](std::size_t i) const { return components_.at(i); }
  Poly& operator[](std::size_t i) { return components_.at(i); }

  PolyOneForm& operator+=(const PolyOneForm& rhs);
  friend PolyOneForm operator+(PolyOneForm a, const PolyOneForm& b) { return a += b; }
  friend PolyOneForm operator-(PolyOneForm a, const PolyOneForm& b);
  friend bool operator==(const PolyOneForm&, const PolyOneForm&) = default;

 private:
  std::vector<Poly> components_;
};

/// Module action of Sym(R^n) on 1-forms: componentwise multiplication.
PolyOneForm operator*(const Poly& scalar, const PolyOneForm& form);

/// Element of Sym(R^n) ⊗ R^n ⊗ R^n; entry (j, i) is the coefficient of e_j ⊗ e_i.
class PolyTwoTensor {
 public:
  explicit PolyTwoTensor(std::size_t dimension);

  std::size_t dimension() const noexcept { return dimension_; }
  const Poly& operator()(std::size_t j, std::size_t i) const { return entries_.at(j * dimension_ + i); }
  Poly& operator()(std::size_t j, std::size_t i) { return entries_.at(j * dimension_ + i); }

  /// Swaps the two vector slots.
  PolyTwoTensor transposed() const;

  friend bool operator==(const PolyTwoTensor&, const PolyTwoTensor&) = default;

 private:
  std::size_t dimension_;
  std::vector<Poly> entries_;
};

/// Deriving transformation: the gradient 1-form Σ ∂p/∂x_i dx_i.
PolyOneForm differential(const Poly& p);

/// (d ⊗ 1)∘d: entry (j, i) = ∂²p/∂x_j∂x_i.
PolyTwoTensor second_differential(const Poly& p);

/// Coderiving transformation d° = (1 ⊗ η)m: Σ ω_i x_i.
Poly coderiving(const PolyOneForm& form);

/// Scales the degree-d component by d (L), by d or 1 at degree 0 (K), or by d+1 (J).
Poly degree_op(DegreeOp op, const Poly& p);

/// Exact inverse of K or J. L is not invertible and is rejected.
Poly degree_op_inverse(DegreeOp op, const Poly& p);

/// Integral transformation: x^α ⊗ e_i ↦ x^α x_i / (1 + |α|).
Poly integral(const PolyOneForm& form);

/// Applies the integral transformation to the first vector slot:
/// component i of the result is integral(Σ_j T(j, i) e_j).
PolyOneForm integral_first_slot(const PolyTwoTensor& tensor);

/// Rota-Baxter operator P_v(p) = integral(Σ v_i p dx_i).
Poly rota_baxter(const Poly& p, std::span<const Rational> v);

/// a ∗ b = a·P_v(b) + P_v(a)·b.
Poly double_product(const Poly& a, const Poly& b, std::span<const Rational> v);

/// Comma-separated canonical component list.
std::string to_string(const PolyOneForm& form);

}  // namespace sym
}  // namespace cinf
