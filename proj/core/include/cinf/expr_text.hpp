#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cinf/expr.hpp"
#include "cinf/poly.hpp"

namespace cinf {

// Grammar (whitespace insignificant):
//
//   list   := expr (',' expr)*
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := 'x' uint | number | prim '(' expr ')' | '(' expr ')' | '-' atom
//           | 'int' '[' name ']' '(' expr ')' | name
//   prim   := 'sin' | 'cos' | 'exp' | 'tanh' | 'atan'
//   number := digits ('.' digits)? ([eE] [+-]? digits)? ('/' digits)?
//
// Variables are 1-indexed in text. A bare name is only legal inside an
// integral that binds it; names of the form t<k> keep k as parameter id.

/// Parses one expression over `dimension` variables. Throws ParseError.
Expr parse_expr(std::string_view text, std::size_t dimension);

/// Parses a comma-separated list of expressions.
std::vector<Expr> parse_expr_list(std::string_view text, std::size_t dimension);

/// Parses a polynomial with exact rational coefficients. Primitives and
/// integrals are rejected.
Poly parse_poly(std::string_view text, std::size_t dimension);

std::vector<Poly> parse_poly_list(std::string_view text, std::size_t dimension);

/// Prints grammar-valid text; parse_expr(to_string(e)) reproduces e up to simplify.
std::string to_string(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Shortest round-tripping decimal form of a double.
std::string format_double(double value);

}  // namespace cinf
