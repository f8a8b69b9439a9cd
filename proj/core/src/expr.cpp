#include "cinf/expr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cinf/errors.hpp"

namespace cinf {

const char* to_string(PrimKind kind) noexcept {
  switch (kind) {
    case PrimKind::Sin: return "sin";
    case PrimKind::Cos: return "cos";
    case PrimKind::Exp: return "exp";
    case PrimKind::Tanh: return "tanh";
    case PrimKind::Atan: return "atan";
  }
  return "?";
}

double apply(PrimKind kind, double x) noexcept {
  switch (kind) {
    case PrimKind::Sin: return std::sin(x);
    case PrimKind::Cos: return std::cos(x);
    case PrimKind::Exp: return std::exp(x);
    case PrimKind::Tanh: return std::tanh(x);
    case PrimKind::Atan: return std::atan(x);
  }
  return 0.0;
}

struct Expr::Node {
  Kind kind = Kind::Const;
  PrimKind prim = PrimKind::Sin;
  std::uint32_t tag = 0;  // variable index, parameter id or exponent
  double value = 0.0;
  std::vector<Expr> children;

  std::uint64_t var_mask = 0;
  std::size_t var_bound = 0;
  ParamId param_bound = 0;
  bool has_integral = false;
  std::size_t count = 1;
};

Expr Expr::make(Node node) {
  for (const Expr& c : node.children) {
    const Node& cn = *c.node_;
    node.var_mask |= cn.var_mask;
    node.var_bound = std::max(node.var_bound, cn.var_bound);
    node.param_bound = std::max(node.param_bound, cn.param_bound);
    node.has_integral = node.has_integral || cn.has_integral;
    node.count += cn.count;
  }
  switch (node.kind) {
    case Kind::Var:
      if (node.tag < 64) node.var_mask |= std::uint64_t{1} << node.tag;
      node.var_bound = std::max<std::size_t>(node.var_bound, node.tag + 1);
      break;
    case Kind::Param:
      node.param_bound = std::max<ParamId>(node.param_bound, node.tag + 1);
      break;
    case Kind::Integral:
      node.param_bound = std::max<ParamId>(node.param_bound, node.tag + 1);
      node.has_integral = true;
      break;
    default:
      break;
  }
  return Expr(std::make_shared<const Node>(std::move(node)));
}

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::var(std::size_t index) {
  Node n;
  n.kind = Kind::Var;
  n.tag = static_cast<std::uint32_t>(index);
  return make(std::move(n));
}

Expr Expr::param(ParamId id) {
  Node n;
  n.kind = Kind::Param;
  n.tag = id;
  return make(std::move(n));
}

Expr Expr::constant(double value) {
  Node n;
  n.kind = Kind::Const;
  n.value = value;
  return make(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
  Node n;
  n.kind = Kind::Sum;
  n.children = std::move(terms);
  return make(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  Node n;
  n.kind = Kind::Product;
  n.children = std::move(factors);
  return make(std::move(n));
}

Expr Expr::power(Expr base, unsigned exponent) {
  Node n;
  n.kind = Kind::Power;
  n.tag = exponent;
  n.children.push_back(std::move(base));
  return make(std::move(n));
}

Expr Expr::negate(Expr operand) {
  Node n;
  n.kind = Kind::Negate;
  n.children.push_back(std::move(operand));
  return make(std::move(n));
}

Expr Expr::prim(PrimKind kind, Expr argument) {
  Node n;
  n.kind = Kind::Prim;
  n.prim = kind;
  n.children.push_back(std::move(argument));
  return make(std::move(n));
}

Expr Expr::integral(ParamId id, Expr body) {
  Node n;
  n.kind = Kind::Integral;
  n.tag = id;
  n.children.push_back(std::move(body));
  return make(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

bool Expr::is_constant(double v) const noexcept {
  return node_->kind == Kind::Const && node_->value == v;
}

std::size_t Expr::var_index() const { return node_->tag; }
ParamId Expr::param_id() const { return node_->tag; }
double Expr::value() const { return node_->value; }
unsigned Expr::exponent() const { return node_->tag; }
PrimKind Expr::prim_kind() const { return node_->prim; }
std::span<const Expr> Expr::operands() const noexcept { return node_->children; }
const Expr& Expr::operand() const { return node_->children.at(0); }

bool Expr::depends_on(std::size_t index) const noexcept {
  if (index < 64) return (node_->var_mask >> index) & 1u;
  return node_->var_bound > index;
}

std::size_t Expr::var_bound() const noexcept { return node_->var_bound; }
ParamId Expr::param_bound() const noexcept { return node_->param_bound; }
bool Expr::has_integral() const noexcept { return node_->has_integral; }
std::size_t Expr::node_count() const noexcept { return node_->count; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const Expr::Node& x = *a.node_;
  const Expr::Node& y = *b.node_;
  if (x.kind != y.kind || x.count != y.count) return false;
  switch (x.kind) {
    case Expr::Kind::Const:
      return x.value == y.value;
    case Expr::Kind::Prim:
      if (x.prim != y.prim) return false;
      break;
    case Expr::Kind::Var:
    case Expr::Kind::Param:
    case Expr::Kind::Power:
    case Expr::Kind::Integral:
      if (x.tag != y.tag) return false;
      break;
    default:
      break;
  }
  return x.children == y.children;
}

// ---------------------------------------------------------------------------
// closedness

namespace {

void check_closed(const Expr& e, std::size_t dimension, std::vector<bool>& bound) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      if (e.var_index() >= dimension) {
        throw IndexError("variable x" + std::to_string(e.var_index() + 1) +
                         " out of range for dimension " + std::to_string(dimension));
      }
      return;
    case Expr::Kind::Param:
      if (e.param_id() >= bound.size() || !bound[e.param_id()]) {
        throw BindingError("parameter t" + std::to_string(e.param_id()) + " is not bound");
      }
      return;
    case Expr::Kind::Integral: {
      const ParamId id = e.param_id();
      if (bound[id]) throw BindingError("parameter t" + std::to_string(id) + " bound twice");
      bound[id] = true;
      check_closed(e.operand(), dimension, bound);
      bound[id] = false;
      return;
    }
    default:
      for (const Expr& c : e.operands()) check_closed(c, dimension, bound);
  }
}

}  // namespace

void require_closed(const Expr& e, std::size_t dimension) {
  std::vector<bool> bound(e.param_bound(), false);
  check_closed(e, dimension, bound);
}

bool uses_param(const Expr& e, ParamId id) {
  if (e.param_bound() <= id) return false;
  if ((e.is(Expr::Kind::Param) || e.is(Expr::Kind::Integral)) && e.param_id() == id) return true;
  for (const Expr& c : e.operands()) {
    if (uses_param(c, id)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

class Evaluator {
 public:
  Evaluator(std::span<const double> point, ParamId params, const QuadConfig& cfg)
      : point_(point), params_(params, 0.0), cfg_(cfg) {}

  double eval(const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::Var: return point_[e.var_index()];
      case Expr::Kind::Param: return params_[e.param_id()];
      case Expr::Kind::Const: return e.value();
      case Expr::Kind::Sum: {
        double s = 0.0;
        for (const Expr& t : e.operands()) s += eval(t);
        return s;
      }
      case Expr::Kind::Product: {
        double p = 1.0;
        for (const Expr& f : e.operands()) p *= eval(f);
        return p;
      }
      case Expr::Kind::Power: {
        const double b = eval(e.operand());
        double r = 1.0;
        for (unsigned k = 0; k < e.exponent(); ++k) r *= b;
        return r;
      }
      case Expr::Kind::Negate: return -eval(e.operand());
      case Expr::Kind::Prim: return apply(e.prim_kind(), eval(e.operand()));
      case Expr::Kind::Integral: return integrate(e);
    }
    return 0.0;
  }

 private:
  double integrate(const Expr& e) {
    const ParamId id = e.param_id();
    const double saved = params_[id];
    const Expr& body = e.operand();
    const QuadResult r = integrate_unit(
        [&](double t) {
          params_[id] = t;
          return eval(body);
        },
        cfg_);
    params_[id] = saved;
    if (!r.converged) {
      throw NonConvergence("integral over t" + std::to_string(id) + " did not converge", r.value,
                           r.error);
    }
    return r.value;
  }

  std::span<const double> point_;
  std::vector<double> params_;
  const QuadConfig& cfg_;
};

}  // namespace

double evaluate(const Expr& e, std::span<const double> point, const QuadConfig& cfg) {
  require_closed(e, point.size());
  Evaluator ev(point, e.param_bound(), cfg);
  return ev.eval(e);
}

// ---------------------------------------------------------------------------
// simplification

namespace {

Expr norm_sum(std::vector<Expr> terms);
Expr norm_product(std::vector<Expr> factors);
Expr norm_negate(const Expr& e);
Expr norm_power(const Expr& base, unsigned exponent);
Expr norm_integral(ParamId id, const Expr& body);

Expr norm_integral(ParamId id, const Expr& body) {
  if (!uses_param(body, id)) return body;  // ∫₀¹ g dt = g
  return Expr::integral(id, body);
}

Expr norm_sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  double constant = 0.0;
  for (Expr& t : terms) {
    if (t.is(Expr::Kind::Sum)) {
      for (const Expr& inner : t.operands()) {
        if (inner.is(Expr::Kind::Const)) {
          constant += inner.value();
        } else {
          flat.push_back(inner);
        }
      }
    } else if (t.is(Expr::Kind::Const)) {
      constant += t.value();
    } else {
      flat.push_back(std::move(t));
    }
  }

  // merge integrals over the same parameter into the first of them
  std::vector<Expr> merged;
  std::vector<std::vector<Expr>> bodies;
  std::vector<std::size_t> slot;  // index into merged for each integral group
  std::vector<ParamId> ids;
  for (Expr& t : flat) {
    if (t.is(Expr::Kind::Integral)) {
      auto it = std::find(ids.begin(), ids.end(), t.param_id());
      if (it != ids.end()) {
        bodies[static_cast<std::size_t>(it - ids.begin())].push_back(t.operand());
        continue;
      }
      ids.push_back(t.param_id());
      bodies.push_back({t.operand()});
      slot.push_back(merged.size());
    }
    merged.push_back(std::move(t));
  }
  for (std::size_t g = 0; g < ids.size(); ++g) {
    if (bodies[g].size() > 1) merged[slot[g]] = norm_integral(ids[g], norm_sum(std::move(bodies[g])));
  }

  // a merge can collapse an integral into a plain term; fold again if so
  bool needs_refold = false;
  for (const Expr& t : merged) {
    if (t.is(Expr::Kind::Const) || t.is(Expr::Kind::Sum)) needs_refold = true;
  }
  if (needs_refold) {
    if (constant != 0.0) merged.push_back(Expr::constant(constant));
    return norm_sum(std::move(merged));
  }

  if (constant != 0.0) merged.push_back(Expr::constant(constant));
  if (merged.empty()) return Expr::constant(0.0);
  if (merged.size() == 1) return merged.front();
  return Expr::sum(std::move(merged));
}

Expr norm_product(std::vector<Expr> factors) {
  double c = 1.0;
  std::vector<Expr> rest;
  auto absorb = [&](auto&& self, const Expr& f) -> void {
    switch (f.kind()) {
      case Expr::Kind::Const: c *= f.value(); break;
      case Expr::Kind::Negate:
        c = -c;
        self(self, f.operand());
        break;
      case Expr::Kind::Product:
        for (const Expr& inner : f.operands()) self(self, inner);
        break;
      default: rest.push_back(f);
    }
  };
  for (const Expr& f : factors) absorb(absorb, f);
  if (c == 0.0) return Expr::constant(0.0);
  if (rest.empty()) return Expr::constant(c);

  // pull integral-free factors into a lone integral factor
  std::size_t integral_at = rest.size();
  std::size_t integral_count = 0;
  for (std::size_t k = 0; k < rest.size(); ++k) {
    if (rest[k].has_integral()) {
      ++integral_count;
      if (rest[k].is(Expr::Kind::Integral)) integral_at = k;
    }
  }
  if (integral_count == 1 && integral_at < rest.size()) {
    const Expr integral = rest[integral_at];
    const ParamId id = integral.param_id();
    std::vector<Expr> inner;
    if (c != 1.0) inner.push_back(Expr::constant(c));
    for (std::size_t k = 0; k < rest.size(); ++k) {
      if (k != integral_at) inner.push_back(rest[k]);
    }
    if (!inner.empty()) {
      bool free_of_id = true;
      for (const Expr& f : inner) free_of_id = free_of_id && !uses_param(f, id);
      if (free_of_id) {
        inner.push_back(integral.operand());
        return norm_integral(id, norm_product(std::move(inner)));
      }
    }
  }

  if (c == -1.0 && rest.size() == 1) {
    const Expr& only = rest.front();
    if (only.is(Expr::Kind::Sum)) {
      std::vector<Expr> negated;
      for (const Expr& t : only.operands()) negated.push_back(norm_negate(t));
      return norm_sum(std::move(negated));
    }
    return Expr::negate(only);
  }
  if (c == 1.0) {
    if (rest.size() == 1) return rest.front();
    return Expr::product(std::move(rest));
  }
  if (c == -1.0) return Expr::negate(Expr::product(std::move(rest)));
  rest.insert(rest.begin(), Expr::constant(c));
  return Expr::product(std::move(rest));
}

Expr norm_negate(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: return Expr::constant(-e.value());
    case Expr::Kind::Negate: return e.operand();
    case Expr::Kind::Sum: {
      std::vector<Expr> negated;
      for (const Expr& t : e.operands()) negated.push_back(norm_negate(t));
      return norm_sum(std::move(negated));
    }
    default: return norm_product({Expr::constant(-1.0), e});
  }
}

Expr norm_power(const Expr& base, unsigned exponent) {
  if (exponent == 0) return Expr::constant(1.0);
  if (exponent == 1) return base;
  switch (base.kind()) {
    case Expr::Kind::Const: return Expr::constant(std::pow(base.value(), static_cast<int>(exponent)));
    case Expr::Kind::Power: return norm_power(base.operand(), base.exponent() * exponent);
    case Expr::Kind::Negate: {
      const Expr inner = norm_power(base.operand(), exponent);
      return exponent % 2 == 0 ? inner : norm_negate(inner);
    }
    default: return Expr::power(base, exponent);
  }
}

Expr simplify_impl(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Var:
    case Expr::Kind::Param:
    case Expr::Kind::Const:
      return e;
    case Expr::Kind::Sum: {
      std::vector<Expr> terms;
      for (const Expr& t : e.operands()) terms.push_back(simplify_impl(t));
      return norm_sum(std::move(terms));
    }
    case Expr::Kind::Product: {
      std::vector<Expr> factors;
      for (const Expr& f : e.operands()) factors.push_back(simplify_impl(f));
      return norm_product(std::move(factors));
    }
    case Expr::Kind::Power: return norm_power(simplify_impl(e.operand()), e.exponent());
    case Expr::Kind::Negate: return norm_negate(simplify_impl(e.operand()));
    case Expr::Kind::Prim: {
      const Expr arg = simplify_impl(e.operand());
      if (arg.is(Expr::Kind::Const)) return Expr::constant(apply(e.prim_kind(), arg.value()));
      return Expr::prim(e.prim_kind(), arg);
    }
    case Expr::Kind::Integral: return norm_integral(e.param_id(), simplify_impl(e.operand()));
  }
  return e;
}

}  // namespace

Expr simplify(const Expr& e) { return simplify_impl(e); }

// ---------------------------------------------------------------------------
// differentiation

namespace {

const Expr& zero() {
  static const Expr z = Expr::constant(0.0);
  return z;
}

Expr partial_raw(const Expr& e, std::size_t i) {
  if (!e.depends_on(i)) return zero();
  switch (e.kind()) {
    case Expr::Kind::Var: return Expr::constant(1.0);
    case Expr::Kind::Param:
    case Expr::Kind::Const:
      return zero();
    case Expr::Kind::Sum: {
      std::vector<Expr> terms;
      for (const Expr& t : e.operands()) {
        if (t.depends_on(i)) terms.push_back(partial_raw(t, i));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Product: {
      const auto factors = e.operands();
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < factors.size(); ++k) {
        if (!factors[k].depends_on(i)) continue;
        std::vector<Expr> term(factors.begin(), factors.end());
        term[k] = partial_raw(factors[k], i);
        terms.push_back(Expr::product(std::move(term)));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Power: {
      const Expr& b = e.operand();
      const unsigned k = e.exponent();
      return Expr::product({Expr::constant(k), Expr::power(b, k - 1), partial_raw(b, i)});
    }
    case Expr::Kind::Negate: return Expr::negate(partial_raw(e.operand(), i));
    case Expr::Kind::Prim: {
      const Expr& a = e.operand();
      const Expr da = partial_raw(a, i);
      switch (e.prim_kind()) {
        case PrimKind::Sin: return Expr::product({Expr::prim(PrimKind::Cos, a), da});
        case PrimKind::Cos: return Expr::negate(Expr::product({Expr::prim(PrimKind::Sin, a), da}));
        case PrimKind::Exp: return Expr::product({e, da});
        case PrimKind::Tanh:
          return Expr::product(
              {Expr::sum({Expr::constant(1.0), Expr::negate(Expr::power(e, 2))}), da});
        case PrimKind::Atan:
          // 1/(1+a²) = cos(atan(a))², which stays inside the primitive set
          return Expr::product({Expr::power(Expr::prim(PrimKind::Cos, e), 2), da});
      }
      return zero();
    }
    case Expr::Kind::Integral: return Expr::integral(e.param_id(), partial_raw(e.operand(), i));
  }
  return zero();
}

}  // namespace

Expr partial(const Expr& e, std::size_t index, std::size_t dimension) {
  if (index >= dimension) {
    throw IndexError("partial derivative index " + std::to_string(index) +
                     " out of range for dimension " + std::to_string(dimension));
  }
  return simplify(partial_raw(e, index));
}

// ---------------------------------------------------------------------------
// substitution

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DimensionError("matrix data does not match its shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k)
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += a(r, k) * b(k, c);
  return out;
}

namespace {

template <typename Leaf>
Expr rebuild(const Expr& e, const Leaf& leaf) {
  switch (e.kind()) {
    case Expr::Kind::Var:
    case Expr::Kind::Param:
    case Expr::Kind::Const:
      return leaf(e);
    case Expr::Kind::Sum:
    case Expr::Kind::Product: {
      std::vector<Expr> kids;
      for (const Expr& c : e.operands()) kids.push_back(rebuild(c, leaf));
      return e.is(Expr::Kind::Sum) ? Expr::sum(std::move(kids)) : Expr::product(std::move(kids));
    }
    case Expr::Kind::Power: return Expr::power(rebuild(e.operand(), leaf), e.exponent());
    case Expr::Kind::Negate: return Expr::negate(rebuild(e.operand(), leaf));
    case Expr::Kind::Prim: return Expr::prim(e.prim_kind(), rebuild(e.operand(), leaf));
    case Expr::Kind::Integral: return Expr::integral(leaf(e).param_id(), rebuild(e.operand(), leaf));
  }
  return e;
}

Expr shift_params(const Expr& e, ParamId offset) {
  if (offset == 0 || e.param_bound() == 0) return e;
  return rebuild(e, [offset](const Expr& leaf) {
    if (leaf.is(Expr::Kind::Param)) return Expr::param(leaf.param_id() + offset);
    if (leaf.is(Expr::Kind::Integral)) return Expr::param(leaf.param_id() + offset);
    return leaf;
  });
}

}  // namespace

Expr substitute_linear(const Expr& g, const Matrix& h) {
  if (g.var_bound() > h.cols()) {
    throw DimensionError("expression uses x" + std::to_string(g.var_bound()) + " but the map has " +
                         std::to_string(h.cols()) + " input coordinates");
  }
  std::vector<Expr> images;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      if (h(i, j) != 0.0) terms.push_back(Expr::product({Expr::constant(h(i, j)), Expr::var(i)}));
    }
    images.push_back(simplify(Expr::sum(std::move(terms))));
  }
  return substitute(g, images);
}

Expr substitute(const Expr& g, std::span<const Expr> alpha) {
  if (g.var_bound() > alpha.size()) {
    throw DimensionError("composition supplies " + std::to_string(alpha.size()) +
                         " functions but the outer expression uses x" + std::to_string(g.var_bound()));
  }
  const ParamId offset = g.param_bound();
  std::vector<Expr> shifted;
  shifted.reserve(alpha.size());
  for (const Expr& a : alpha) shifted.push_back(shift_params(a, offset));
  return simplify(rebuild(g, [&](const Expr& leaf) {
    if (leaf.is(Expr::Kind::Var)) return shifted[leaf.var_index()];
    if (leaf.is(Expr::Kind::Integral)) return Expr::param(leaf.param_id());
    return leaf;
  }));
}

Expr scale_vars(const Expr& e, ParamId id) {
  if (uses_param(e, id)) {
    throw BindingError("parameter t" + std::to_string(id) + " already occurs in the expression");
  }
  return rebuild(e, [id](const Expr& leaf) {
    if (leaf.is(Expr::Kind::Var)) return Expr::product({Expr::param(id), leaf});
    if (leaf.is(Expr::Kind::Integral)) return Expr::param(leaf.param_id());
    return leaf;
  });
}

Expr from_poly(const Poly& p) {
  std::vector<Expr> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Expr> factors;
    if (c != 1 || m.degree() == 0) factors.push_back(Expr::constant(c.get_d()));
    for (std::size_t i = 0; i < m.dimension(); ++i) {
      const unsigned e = m.exponent(i);
      if (e == 1) factors.push_back(Expr::var(i));
      if (e > 1) factors.push_back(Expr::power(Expr::var(i), e));
    }
    terms.push_back(factors.size() == 1 ? factors.front() : Expr::product(std::move(factors)));
  }
  if (terms.empty()) return Expr::constant(0.0);
  if (terms.size() == 1) return terms.front();
  return Expr::sum(std::move(terms));
}

}  // namespace cinf
