#include "cinf/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cinf/errors.hpp"

namespace cinf {

Rational make_rational(long num, unsigned long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Monomial Monomial::variable(std::size_t dimension, std::size_t index) {
  if (index >= dimension) {
    throw IndexError("variable index " + std::to_string(index) + " out of range for dimension " +
                     std::to_string(dimension));
  }
  Monomial m(dimension);
  m.exponents_[index] = 1;
  return m;
}

unsigned Monomial::degree() const noexcept {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0u);
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.dimension() != dimension()) {
    throw DimensionError("monomial dimension mismatch");
  }
  Monomial out(*this);
  for (std::size_t i = 0; i < exponents_.size(); ++i) out.exponents_[i] += other.exponents_[i];
  return out;
}

bool GradedLexDescending::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da > db;
  return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                      a.exponents().begin(), a.exponents().end());
}

Poly Poly::constant(std::size_t dimension, const Rational& value) {
  Poly p(dimension);
  p.add_term(Monomial(dimension), value);
  return p;
}

Poly Poly::variable(std::size_t dimension, std::size_t index) {
  Poly p(dimension);
  p.add_term(Monomial::variable(dimension, index), Rational(1));
  return p;
}

Poly Poly::term(const Rational& coefficient, Monomial monomial) {
  Poly p(monomial.dimension());
  p.add_term(monomial, coefficient);
  return p;
}

int Poly::degree() const noexcept {
  // Graded order puts the highest degree first.
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_term() const { return coefficient(Monomial(dimension_)); }

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.dimension() != dimension_) {
    throw DimensionError("monomial of dimension " + std::to_string(m.dimension()) +
                         " added to polynomial of dimension " + std::to_string(dimension_));
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::require_same_dimension(const Poly& other, const char* op) const {
  if (other.dimension_ != dimension_) {
    throw DimensionError(std::string("polynomial ") + op + ": dimensions " +
                         std::to_string(dimension_) + " and " + std::to_string(other.dimension_));
  }
}

Poly& Poly::operator+=(const Poly& rhs) {
  require_same_dimension(rhs, "add");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  require_same_dimension(rhs, "subtract");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  lhs.require_same_dimension(rhs, "multiply");
  Poly out(lhs.dimension_);
  for (const auto& [ma, ca] : lhs.terms_) {
    for (const auto& [mb, cb] : rhs.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

Poly pow(const Poly& base, unsigned exponent) {
  Poly result = Poly::constant(base.dimension(), Rational(1));
  Poly square = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= square;
    exponent >>= 1;
    if (exponent > 0) square *= square;
  }
  return result;
}

namespace {

template <typename Scalar>
Scalar evaluate_impl(const Poly& p, std::span<const Scalar> point) {
  if (point.size() != p.dimension()) {
    throw DimensionError("evaluation point has length " + std::to_string(point.size()) +
                         ", polynomial dimension is " + std::to_string(p.dimension()));
  }
  Scalar total = 0;
  for (const auto& [m, c] : p.terms()) {
    Scalar value;
    if constexpr (std::is_same_v<Scalar, double>) {
      value = c.get_d();
    } else {
      value = c;
    }
    for (std::size_t i = 0; i < m.dimension(); ++i) {
      for (unsigned k = 0; k < m.exponent(i); ++k) value *= point[i];
    }
    total += value;
  }
  return total;
}

}  // namespace

Rational evaluate(const Poly& p, std::span<const Rational> point) {
  return evaluate_impl<Rational>(p, point);
}

double evaluate(const Poly& p, std::span<const double> point) {
  return evaluate_impl<double>(p, point);
}

Poly partial(const Poly& p, std::size_t index) {
  if (index >= p.dimension()) {
    throw IndexError("partial derivative index " + std::to_string(index) +
                     " out of range for dimension " + std::to_string(p.dimension()));
  }
  Poly out(p.dimension());
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.exponent(index);
    if (e == 0) continue;
    std::vector<unsigned> exps = m.exponents();
    exps[index] = e - 1;
    out.add_term(Monomial(std::move(exps)), c * e);
  }
  return out;
}

Poly substitute(const Poly& p, std::span<const Poly> assignment) {
  if (assignment.size() != p.dimension()) {
    throw DimensionError("substitution supplies " + std::to_string(assignment.size()) +
                         " polynomials for " + std::to_string(p.dimension()) + " variables");
  }
  if (assignment.empty()) return p;
  const std::size_t target = assignment.front().dimension();
  for (const Poly& a : assignment) {
    if (a.dimension() != target) throw DimensionError("substitution targets disagree on dimension");
  }

  // powers[j][k] = assignment[j]^k, filled on demand
  std::vector<std::vector<Poly>> powers(assignment.size());
  auto power_of = [&](std::size_t j, unsigned k) -> const Poly& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(Poly::constant(target, Rational(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * assignment[j]);
    return cache[k];
  };

  Poly out(target);
  for (const auto& [m, c] : p.terms()) {
    Poly term = Poly::constant(target, c);
    for (std::size_t j = 0; j < m.dimension(); ++j) {
      if (m.exponent(j) > 0) term *= power_of(j, m.exponent(j));
    }
    out += term;
  }
  return out;
}

std::map<unsigned, Poly> homogeneous_components(const Poly& p) {
  std::map<unsigned, Poly> parts;
  for (const auto& [m, c] : p.terms()) {
    auto [it, _] = parts.try_emplace(m.degree(), p.dimension());
    it->second.add_term(m, c);
  }
  return parts;
}

namespace {

void write_monomial(std::ostream& os, const Monomial& m) {
  bool first = true;
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    const unsigned e = m.exponent(i);
    if (e == 0) continue;
    if (!first) os << '*';
    first = false;
    os << 'x' << (i + 1);
    if (e > 1) os << '^' << e;
  }
}

}  // namespace

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational magnitude = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (m.degree() == 0) {
      os << magnitude.get_str();
    } else {
      if (magnitude != 1) os << magnitude.get_str() << '*';
      write_monomial(os, m);
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

}  // namespace cinf
