#include "cinf/sym.hpp"

#include <stdexcept>

#include "cinf/errors.hpp"

namespace cinf {

const char* to_string(DegreeOp op) noexcept {
  switch (op) {
    case DegreeOp::L: return "L";
    case DegreeOp::K: return "K";
    case DegreeOp::J: return "J";
  }
  return "?";
}

namespace sym {

PolyOneForm::PolyOneForm(std::size_t dimension) : components_(dimension, Poly(dimension)) {}

PolyOneForm::PolyOneForm(std::vector<Poly> components) : components_(std::move(components)) {
  for (const Poly& c : components_) {
    if (c.dimension() != components_.size()) {
      throw DimensionError("1-form component of dimension " + std::to_string(c.dimension()) +
                           " in a form with " + std::to_string(components_.size()) + " components");
    }
  }
}

PolyOneForm& PolyOneForm::operator+=(const PolyOneForm& rhs) {
  if (rhs.dimension() != dimension()) throw DimensionError("1-form dimension mismatch");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += rhs.components_[i];
  return *this;
}

PolyOneForm operator-(PolyOneForm a, const PolyOneForm& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("1-form dimension mismatch");
  for (std::size_t i = 0; i < a.dimension(); ++i) a.components_[i] -= b.components_[i];
  return a;
}

PolyOneForm operator*(const Poly& scalar, const PolyOneForm& form) {
  std::vector<Poly> out;
  out.reserve(form.dimension());
  for (const Poly& c : form.components()) out.push_back(scalar * c);
  return PolyOneForm(std::move(out));
}

PolyTwoTensor::PolyTwoTensor(std::size_t dimension)
    : dimension_(dimension), entries_(dimension * dimension, Poly(dimension)) {}

PolyTwoTensor PolyTwoTensor::transposed() const {
  PolyTwoTensor out(dimension_);
  for (std::size_t j = 0; j < dimension_; ++j)
    for (std::size_t i = 0; i < dimension_; ++i) out(i, j) = (*this)(j, i);
  return out;
}

PolyOneForm differential(const Poly& p) {
  std::vector<Poly> out;
  out.reserve(p.dimension());
  for (std::size_t i = 0; i < p.dimension(); ++i) out.push_back(partial(p, i));
  return PolyOneForm(std::move(out));
}

PolyTwoTensor second_differential(const Poly& p) {
  PolyTwoTensor out(p.dimension());
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    const Poly di = partial(p, i);
    for (std::size_t j = 0; j < p.dimension(); ++j) out(j, i) = partial(di, j);
  }
  return out;
}

Poly coderiving(const PolyOneForm& form) {
  const std::size_t n = form.dimension();
  Poly out(n);
  for (std::size_t i = 0; i < n; ++i) out += form[i] * Poly::variable(n, i);
  return out;
}

Poly degree_op(DegreeOp op, const Poly& p) {
  Poly out(p.dimension());
  for (const auto& [m, c] : p.terms()) {
    const unsigned d = m.degree();
    unsigned factor = d;
    if (op == DegreeOp::K && d == 0) factor = 1;
    if (op == DegreeOp::J) factor = d + 1;
    out.add_term(m, c * factor);
  }
  return out;
}

Poly degree_op_inverse(DegreeOp op, const Poly& p) {
  if (op == DegreeOp::L) throw std::invalid_argument("L has no inverse: it annihilates constants");
  Poly out(p.dimension());
  for (const auto& [m, c] : p.terms()) {
    const unsigned d = m.degree();
    const unsigned divisor = op == DegreeOp::K ? (d == 0 ? 1 : d) : d + 1;
    out.add_term(m, c / divisor);
  }
  return out;
}

Poly integral(const PolyOneForm& form) {
  const std::size_t n = form.dimension();
  Poly out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [m, c] : form[i].terms()) {
      std::vector<unsigned> exps = m.exponents();
      exps[i] += 1;
      out.add_term(Monomial(std::move(exps)), c / (m.degree() + 1));
    }
  }
  return out;
}

PolyOneForm integral_first_slot(const PolyTwoTensor& tensor) {
  const std::size_t n = tensor.dimension();
  std::vector<Poly> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Poly> column;
    column.reserve(n);
    for (std::size_t j = 0; j < n; ++j) column.push_back(tensor(j, i));
    out.push_back(integral(PolyOneForm(std::move(column))));
  }
  return PolyOneForm(std::move(out));
}

Poly rota_baxter(const Poly& p, std::span<const Rational> v) {
  if (v.size() != p.dimension()) {
    throw DimensionError("Rota-Baxter vector has length " + std::to_string(v.size()) +
                         ", polynomial dimension is " + std::to_string(p.dimension()));
  }
  std::vector<Poly> components;
  components.reserve(v.size());
  for (const Rational& vi : v) components.push_back(p * vi);
  return integral(PolyOneForm(std::move(components)));
}

Poly double_product(const Poly& a, const Poly& b, std::span<const Rational> v) {
  if (a.dimension() != b.dimension()) throw DimensionError("double product dimension mismatch");
  return a * rota_baxter(b, v) + rota_baxter(a, v) * b;
}

std::string to_string(const PolyOneForm& form) {
  std::string out;
  for (std::size_t i = 0; i < form.dimension(); ++i) {
    if (i > 0) out += ", ";
    out += cinf::to_string(form[i]);
  }
  return out;
}

}  // namespace sym
}  // namespace cinf
