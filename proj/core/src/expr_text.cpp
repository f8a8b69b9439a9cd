#include "cinf/expr_text.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include "cinf/errors.hpp"

namespace cinf {

namespace {

enum class Tok { Number, Name, Plus, Minus, Star, Caret, LParen, RParen, LBracket, RBracket, Comma, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t line_start = 0;
  std::size_t i = 0;
  auto is_digit = [&](std::size_t k) {
    return k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]));
  };
  while (i < src.size()) {
    const char ch = src[i];
    const std::size_t col = i - line_start + 1;
    if (ch == '\n') {
      ++line;
      line_start = ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (is_digit(i) || (ch == '.' && is_digit(i + 1))) {
      const std::size_t start = i;
      while (is_digit(i)) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        while (is_digit(i)) ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t k = i + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (is_digit(k)) {
          i = k;
          while (is_digit(i)) ++i;
        }
      }
      if (i < src.size() && src[i] == '/' && is_digit(i + 1)) {
        ++i;
        while (is_digit(i)) ++i;
      }
      out.push_back({Tok::Number, src.substr(start, i - start), line, col});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = i;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::Name, src.substr(start, i - start), line, col});
      continue;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    out.push_back({kind, src.substr(i, 1), line, col});
    ++i;
  }
  out.push_back({Tok::End, {}, line, src.size() - line_start + 1});
  return out;
}

std::optional<std::uint32_t> numbered(std::string_view digits) {
  if (digits.empty()) return std::nullopt;
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return v;
}

/// Parameter id carried by a name of the form t<k>.
std::optional<ParamId> param_number(std::string_view name) {
  if (name.size() < 2 || name[0] != 't') return std::nullopt;
  for (char c : name.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  }
  return numbered(name.substr(1));
}

std::optional<PrimKind> prim_named(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, PrimKind>, 5> table{{
      {"sin", PrimKind::Sin},
      {"cos", PrimKind::Cos},
      {"exp", PrimKind::Exp},
      {"tanh", PrimKind::Tanh},
      {"atan", PrimKind::Atan},
  }};
  for (const auto& [n, k] : table) {
    if (n == name) return k;
  }
  return std::nullopt;
}

/// Recursive-descent parser, generic over what it builds.
template <typename Builder>
class Parser {
 public:
  using Value = typename Builder::Value;

  Parser(std::string_view src, Builder& builder) : tokens_(tokenize(src)), b_(builder) {
    for (const Token& t : tokens_) {
      if (t.kind != Tok::Name) continue;
      if (auto id = param_number(t.text)) next_param_ = std::max(next_param_, *id + 1);
    }
  }

  Value parse_single() {
    Value v = expr();
    expect(Tok::End, "end of input");
    return v;
  }

  std::vector<Value> parse_list() {
    std::vector<Value> out;
    out.push_back(expr());
    while (peek().kind == Tok::Comma) {
      advance();
      out.push_back(expr());
    }
    expect(Tok::End, "',' or end of input");
    return out;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      const Token& t = peek();
      fail(std::string("expected ") + what +
               (t.kind == Tok::End ? std::string(", found end of input")
                                   : ", found '" + std::string(t.text) + "'"),
           t);
    }
    return advance();
  }

  Value expr() {
    std::vector<Value> terms;
    terms.push_back(term());
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = advance().kind == Tok::Minus;
      Value t = term();
      terms.push_back(minus ? b_.negate(std::move(t)) : std::move(t));
    }
    if (terms.size() == 1) return std::move(terms.front());
    return b_.sum(std::move(terms));
  }

  Value term() {
    std::vector<Value> factors;
    factors.push_back(unary());
    while (peek().kind == Tok::Star) {
      advance();
      factors.push_back(unary());
    }
    if (factors.size() == 1) return std::move(factors.front());
    return b_.product(std::move(factors));
  }

  // -x^2 is -(x^2).
  Value unary() {
    if (peek().kind != Tok::Minus) return factor();
    advance();
    return b_.negate(unary());
  }

  Value factor() {
    Value base = atom();
    if (peek().kind != Tok::Caret) return base;
    advance();
    const Token& t = expect(Tok::Number, "an integer exponent");
    auto e = numbered(t.text);
    if (!e) fail("exponent must be a non-negative integer", t);
    return b_.power(std::move(base), *e);
  }

  Value atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        advance();
        return b_.number(t.text, t);
      case Tok::LParen: {
        advance();
        Value inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Name:
        return named();
      default:
        if (t.kind == Tok::End) fail("unexpected end of input", t);
        fail("unexpected '" + std::string(t.text) + "'", t);
    }
  }

  Value named() {
    const Token& t = advance();
    const std::string_view name = t.text;
    if (name.size() > 1 && name[0] == 'x') {
      if (auto k = numbered(name.substr(1))) {
        if (*k == 0) fail("variables are numbered from x1", t);
        if (*k > b_.dimension()) {
          fail("variable " + std::string(name) + " out of range for dimension " +
                   std::to_string(b_.dimension()),
               t);
        }
        return b_.var(*k - 1, t);
      }
    }
    if (auto prim = prim_named(name)) {
      expect(Tok::LParen, "'(' after function name");
      Value arg = expr();
      expect(Tok::RParen, "')'");
      return b_.prim(*prim, std::move(arg), t);
    }
    if (name == "int") return integral(t);
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return b_.param(it->second, t);
    }
    fail("unknown identifier '" + std::string(name) + "'", t);
  }

  Value integral(const Token& at) {
    expect(Tok::LBracket, "'[' after int");
    const Token& name = expect(Tok::Name, "a parameter name");
    expect(Tok::RBracket, "']'");
    ParamId id;
    if (auto k = param_number(name.text)) {
      for (const auto& [n, bound] : scope_) {
        if (bound == *k) fail("parameter " + std::string(name.text) + " bound twice", name);
      }
      id = *k;
    } else {
      id = next_param_++;
    }
    expect(Tok::LParen, "'(' after int[...]");
    scope_.emplace_back(name.text, id);
    Value body = expr();
    scope_.pop_back();
    expect(Tok::RParen, "')'");
    return b_.integral(id, std::move(body), at);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Builder& b_;
  std::vector<std::pair<std::string_view, ParamId>> scope_;
  ParamId next_param_ = 0;
};

// Splits a numeric literal into exact mantissa/scale parts.
struct Literal {
  std::string digits;   // integer digits of the mantissa, no point
  long exponent10 = 0;  // value = digits * 10^exponent10 / denominator
  std::string denominator = "1";
};

Literal decompose(std::string_view text) {
  Literal lit;
  std::string_view main = text;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    main = text.substr(0, slash);
    lit.denominator = std::string(text.substr(slash + 1));
  }
  std::string_view mantissa = main;
  if (auto e = main.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = main.substr(0, e);
    std::string_view ex = main.substr(e + 1);
    const bool neg = !ex.empty() && ex[0] == '-';
    if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) ex.remove_prefix(1);
    long v = 0;
    std::from_chars(ex.data(), ex.data() + ex.size(), v);
    lit.exponent10 = neg ? -v : v;
  }
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    lit.digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    lit.exponent10 -= static_cast<long>(mantissa.size() - dot - 1);
  } else {
    lit.digits = std::string(mantissa);
  }
  if (lit.digits.empty()) lit.digits = "0";
  return lit;
}

class ExprBuilder {
 public:
  using Value = Expr;
  explicit ExprBuilder(std::size_t dimension) : dimension_(dimension) {}
  std::size_t dimension() const { return dimension_; }

  Expr number(std::string_view text, const Token& at) {
    const auto slash = text.find('/');
    const std::string_view main = text.substr(0, slash);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(main.data(), main.data() + main.size(), value);
    if (ec != std::errc{} || ptr != main.data() + main.size()) {
      throw ParseError("malformed number '" + std::string(text) + "'", at.line, at.column);
    }
    if (slash != std::string_view::npos) {
      const std::string_view den = text.substr(slash + 1);
      double d = 0.0;
      std::from_chars(den.data(), den.data() + den.size(), d);
      if (d == 0.0) throw ParseError("division by zero in literal", at.line, at.column);
      value /= d;
    }
    return Expr::constant(value);
  }
  Expr var(std::size_t index, const Token&) { return Expr::var(index); }
  Expr param(ParamId id, const Token&) { return Expr::param(id); }
  Expr negate(Expr e) { return Expr::negate(std::move(e)); }
  Expr sum(std::vector<Expr> terms) { return Expr::sum(std::move(terms)); }
  Expr product(std::vector<Expr> factors) { return Expr::product(std::move(factors)); }
  Expr power(Expr base, unsigned k) { return Expr::power(std::move(base), k); }
  Expr prim(PrimKind kind, Expr arg, const Token&) { return Expr::prim(kind, std::move(arg)); }
  Expr integral(ParamId id, Expr body, const Token&) { return Expr::integral(id, std::move(body)); }

 private:
  std::size_t dimension_;
};

class PolyBuilder {
 public:
  using Value = Poly;
  explicit PolyBuilder(std::size_t dimension) : dimension_(dimension) {}
  std::size_t dimension() const { return dimension_; }

  Poly number(std::string_view text, const Token& at) {
    const Literal lit = decompose(text);
    mpz_class num(lit.digits, 10);
    mpz_class den(lit.denominator, 10);
    if (den == 0) throw ParseError("division by zero in literal", at.line, at.column);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(lit.exponent10)));
    if (lit.exponent10 >= 0) {
      num *= scale;
    } else {
      den *= scale;
    }
    Rational r(num, den);
    r.canonicalize();
    return Poly::constant(dimension_, r);
  }
  Poly var(std::size_t index, const Token&) { return Poly::variable(dimension_, index); }
  Poly param(ParamId, const Token& at) { reject("parameters", at); }
  Poly negate(Poly p) { return -std::move(p); }
  Poly sum(std::vector<Poly> terms) {
    Poly out(dimension_);
    for (const Poly& t : terms) out += t;
    return out;
  }
  Poly product(std::vector<Poly> factors) {
    Poly out = Poly::constant(dimension_, Rational(1));
    for (const Poly& f : factors) out *= f;
    return out;
  }
  Poly power(Poly base, unsigned k) { return pow(base, k); }
  Poly prim(PrimKind kind, Poly, const Token& at) {
    reject(std::string("function ") + to_string(kind), at);
  }
  Poly integral(ParamId, Poly, const Token& at) { reject("integrals", at); }

 private:
  [[noreturn]] static void reject(const std::string& what, const Token& at) {
    throw ParseError(what + " are not allowed in a polynomial", at.line, at.column);
  }

  std::size_t dimension_;
};

}  // namespace

Expr parse_expr(std::string_view text, std::size_t dimension) {
  ExprBuilder b(dimension);
  return Parser<ExprBuilder>(text, b).parse_single();
}

std::vector<Expr> parse_expr_list(std::string_view text, std::size_t dimension) {
  ExprBuilder b(dimension);
  return Parser<ExprBuilder>(text, b).parse_list();
}

Poly parse_poly(std::string_view text, std::size_t dimension) {
  PolyBuilder b(dimension);
  return Parser<PolyBuilder>(text, b).parse_single();
}

std::vector<Poly> parse_poly_list(std::string_view text, std::size_t dimension) {
  PolyBuilder b(dimension);
  return Parser<PolyBuilder>(text, b).parse_list();
}

// ---------------------------------------------------------------------------
// printing

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

namespace {

// Binding strength of the context a subexpression is printed into.
enum class Level { Sum = 0, Term = 1, Factor = 2, Atom = 3 };

bool is_unary_minus(const Expr& e) {
  return e.is(Expr::Kind::Negate) || (e.is(Expr::Kind::Const) && std::signbit(e.value()) && e.value() != 0.0);
}

void print(std::ostream& os, const Expr& e, Level ctx);

void print_parenthesized(std::ostream& os, const Expr& e) {
  os << '(';
  print(os, e, Level::Sum);
  os << ')';
}

void print(std::ostream& os, const Expr& e, Level ctx) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      os << 'x' << (e.var_index() + 1);
      return;
    case Expr::Kind::Param:
      os << 't' << e.param_id();
      return;
    case Expr::Kind::Const: {
      const double v = e.value();
      if (std::signbit(v) && v != 0.0) {
        if (ctx == Level::Factor) {
          os << "-" << format_double(-v);
        } else if (ctx == Level::Atom) {
          os << "(-" << format_double(-v) << ')';
        } else {
          os << '-' << format_double(-v);
        }
      } else {
        os << format_double(v == 0.0 ? 0.0 : v);
      }
      return;
    }
    case Expr::Kind::Sum: {
      if (ctx > Level::Sum) return print_parenthesized(os, e);
      bool first = true;
      for (const Expr& t : e.operands()) {
        if (!first && t.is(Expr::Kind::Negate)) {
          os << " - ";
          print(os, t.operand(), Level::Term);
        } else if (!first && t.is(Expr::Kind::Const) && std::signbit(t.value()) && t.value() != 0.0) {
          os << " - " << format_double(-t.value());
        } else if (!first && t.is(Expr::Kind::Product) && t.operands().front().is(Expr::Kind::Const) &&
                   t.operands().front().value() < 0.0) {
          os << " - " << format_double(-t.operands().front().value());
          for (const Expr& f : t.operands().subspan(1)) {
            os << '*';
            print(os, f, Level::Factor);
          }
        } else {
          if (!first) os << " + ";
          print(os, t, Level::Term);
        }
        first = false;
      }
      return;
    }
    case Expr::Kind::Product: {
      if (ctx > Level::Term) return print_parenthesized(os, e);
      bool first = true;
      for (const Expr& f : e.operands()) {
        if (!first) os << '*';
        // a leading sign is unambiguous; later ones are parenthesised for readability
        if (!first && is_unary_minus(f)) {
          print_parenthesized(os, f);
        } else {
          print(os, f, Level::Factor);
        }
        first = false;
      }
      return;
    }
    case Expr::Kind::Power: {
      if (ctx > Level::Factor) return print_parenthesized(os, e);
      print(os, e.operand(), Level::Atom);
      os << '^' << e.exponent();
      return;
    }
    case Expr::Kind::Negate: {
      // "-a" is an atom, but "-a^2" would read as (-a)^2, so a power base
      // gets explicit parentheses
      if (ctx == Level::Atom) return print_parenthesized(os, e);
      os << '-';
      print(os, e.operand(), Level::Atom);
      return;
    }
    case Expr::Kind::Prim:
      os << to_string(e.prim_kind()) << '(';
      print(os, e.operand(), Level::Sum);
      os << ')';
      return;
    case Expr::Kind::Integral:
      os << "int[t" << e.param_id() << "](";
      print(os, e.operand(), Level::Sum);
      os << ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e, Level::Sum);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) {
  print(os, e, Level::Sum);
  return os;
}

}  // namespace cinf
