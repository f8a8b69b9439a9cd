#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace cinf {

/// Exact scalar. GMP keeps every value canonical: positive denominator,
/// reduced fraction, zero as 0/1.
using Rational = mpq_class;

/// Builds num/den in canonical form.
Rational make_rational(long num, unsigned long den = 1);

/// x_0^{e_0} ... x_{n-1}^{e_{n-1}} over a fixed ambient dimension n.
///
/// Stored densely; an index whose exponent is 0 simply does not occur in the
/// monomial.
class Monomial {
 public:
  explicit Monomial(std::size_t dimension = 0) : exponents_(dimension, 0) {}
  explicit Monomial(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {}

  static Monomial variable(std::size_t dimension, std::size_t index);

  std::size_t dimension() const noexcept { return exponents_.size(); }
  unsigned exponent(std::size_t index) const { return exponents_.at(index); }
  const std::vector<unsigned>& exponents() const noexcept { return exponents_; }
  unsigned degree() const noexcept;

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<unsigned> exponents_;
};

/// Graded lexicographic order, largest first: higher total degree precedes
/// lower, ties broken by the first differing exponent (larger first).
struct GradedLexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no stored coefficient is zero and every monomial has the
/// polynomial's dimension. Dimension 0 is legal and holds constants only.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, GradedLexDescending>;

  explicit Poly(std::size_t dimension = 0) : dimension_(dimension) {}

  static Poly constant(std::size_t dimension, const Rational& value);
  static Poly variable(std::size_t dimension, std::size_t index);
  static Poly term(const Rational& coefficient, Monomial monomial);

  std::size_t dimension() const noexcept { return dimension_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const noexcept;
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  /// Adds c*m in place, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& scalar);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(Poly lhs, const Rational& s) { return lhs *= s; }
  friend Poly operator*(const Rational& s, Poly rhs) { return rhs *= s; }
  friend Poly operator-(Poly p) { return p *= Rational(-1); }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.dimension_ == b.dimension_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_dimension(const Poly& other, const char* op) const;

  std::size_t dimension_;
  Terms terms_;
};

Poly pow(const Poly& base, unsigned exponent);

/// Exact value at a rational point.
Rational evaluate(const Poly& p, std::span<const Rational> point);
/// Floating value at a real point.
double evaluate(const Poly& p, std::span<const double> point);

/// Exact partial derivative with respect to x_index.
Poly partial(const Poly& p, std::size_t index);

/// Replaces outer variable j of p by assignment[j] and expands. All
/// assignment entries must share one dimension, which becomes the result's.
Poly substitute(const Poly& p, std::span<const Poly> assignment);

/// Degree-d parts of p keyed by d. The parts sum to p; the zero polynomial
/// has no parts.
std::map<unsigned, Poly> homogeneous_components(const Poly& p);

/// Canonical text: graded lexicographic order, `3/8*x1^3*x2^5 + 1/4*x1^3*x2`.
/// Variables print 1-indexed.
std::string to_string(const Poly& p);
std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace cinf
