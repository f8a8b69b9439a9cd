#include "cinf/smooth.hpp"

#include <algorithm>
#include <cmath>

#include "cinf/errors.hpp"
#include "cinf/expr_text.hpp"
#include "cinf/random.hpp"

namespace cinf::smooth {

SmoothOneForm SmoothOneForm::zero(std::size_t dimension) {
  return SmoothOneForm(std::vector<Expr>(dimension, Expr::constant(0.0)));
}

SmoothOneForm operator*(const Expr& f, const SmoothOneForm& form) {
  std::vector<Expr> out;
  out.reserve(form.dimension());
  for (const Expr& c : form.components()) out.push_back(simplify(f * c));
  return SmoothOneForm(std::move(out));
}

SmoothTwoTensor SmoothTwoTensor::transposed() const {
  SmoothTwoTensor out(dimension_);
  for (std::size_t j = 0; j < dimension_; ++j)
    for (std::size_t i = 0; i < dimension_; ++i) out(i, j) = (*this)(j, i);
  return out;
}

SmoothOneForm differential(const Expr& f, std::size_t dimension) {
  require_closed(f, dimension);
  std::vector<Expr> out;
  out.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) out.push_back(partial(f, i, dimension));
  return SmoothOneForm(std::move(out));
}

SmoothTwoTensor second_differential(const Expr& f, std::size_t dimension) {
  SmoothTwoTensor out(dimension);
  const SmoothOneForm df = differential(f, dimension);
  for (std::size_t i = 0; i < dimension; ++i)
    for (std::size_t j = 0; j < dimension; ++j) out(j, i) = partial(df[i], j, dimension);
  return out;
}

Expr coderiving(const SmoothOneForm& form) {
  std::vector<Expr> terms;
  terms.reserve(form.dimension());
  for (std::size_t i = 0; i < form.dimension(); ++i) terms.push_back(form[i] * Expr::var(i));
  return simplify(Expr::sum(std::move(terms)));
}

Expr degree_op(DegreeOp op, const Expr& f, std::size_t dimension, const QuadConfig& cfg) {
  const Expr l = coderiving(differential(f, dimension));
  switch (op) {
    case DegreeOp::L: return l;
    case DegreeOp::K: return simplify(l + Expr::constant(counit(f, dimension, cfg)));
    case DegreeOp::J: return simplify(l + f);
  }
  return l;
}

namespace {

ParamId fresh_param(const SmoothOneForm& form) {
  ParamId id = 0;
  for (const Expr& c : form.components()) id = std::max(id, c.param_bound());
  return id;
}

}  // namespace

Expr degree_op_inverse(DegreeOp op, const Expr& f, std::size_t dimension, const QuadConfig& cfg) {
  require_closed(f, dimension);
  if (op == DegreeOp::L) throw std::invalid_argument("L has no inverse: it annihilates constants");
  const ParamId t = f.param_bound();
  if (op == DegreeOp::J) return simplify(Expr::integral(t, scale_vars(f, t)));

  // ∫₀¹∫₀¹ ∇f(stv)·v ds dt + f(0)
  const ParamId s = t + 1;
  const SmoothOneForm df = differential(f, dimension);
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < dimension; ++i) {
    terms.push_back(scale_vars(scale_vars(df[i], s), t) * Expr::var(i));
  }
  const Expr nested = Expr::integral(t, Expr::integral(s, Expr::sum(std::move(terms))));
  return simplify(nested + Expr::constant(counit(f, dimension, cfg)));
}

Expr line_integral(const SmoothOneForm& form) {
  const ParamId t = fresh_param(form);
  std::vector<Expr> terms;
  terms.reserve(form.dimension());
  for (std::size_t i = 0; i < form.dimension(); ++i) {
    terms.push_back(scale_vars(form[i], t) * Expr::var(i));
  }
  return simplify(Expr::integral(t, Expr::sum(std::move(terms))));
}

SmoothOneForm line_integral_first_slot(const SmoothTwoTensor& tensor) {
  const std::size_t n = tensor.dimension();
  std::vector<Expr> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> column;
    for (std::size_t j = 0; j < n; ++j) column.push_back(tensor(j, i));
    out.push_back(line_integral(SmoothOneForm(std::move(column))));
  }
  return SmoothOneForm(std::move(out));
}

double counit(const Expr& f, std::size_t dimension, const QuadConfig& cfg) {
  const std::vector<double> origin(dimension, 0.0);
  return evaluate(f, origin, cfg);
}

std::vector<double> epsilon(const Expr& f, std::size_t dimension, const QuadConfig& cfg) {
  const std::vector<double> origin(dimension, 0.0);
  const SmoothOneForm df = differential(f, dimension);
  std::vector<double> out;
  out.reserve(dimension);
  for (const Expr& c : df.components()) out.push_back(evaluate(c, origin, cfg));
  return out;
}

Expr rota_baxter(const Expr& f, std::span<const double> v) {
  if (f.var_bound() > v.size()) {
    throw DimensionError("Rota-Baxter vector has length " + std::to_string(v.size()) +
                         " but the expression uses x" + std::to_string(f.var_bound()));
  }
  std::vector<Expr> components;
  components.reserve(v.size());
  for (double vi : v) components.push_back(simplify(Expr::constant(vi) * f));
  return line_integral(SmoothOneForm(std::move(components)));
}

Expr double_product(const Expr& f, const Expr& g, std::span<const double> v) {
  return simplify(f * rota_baxter(g, v) + rota_baxter(f, v) * g);
}

DualElement square_zero_apply(const Expr& g, std::span<const DualElement> duals) {
  const std::size_t k = duals.size();
  if (g.var_bound() > k) {
    throw DimensionError("expression uses y" + std::to_string(g.var_bound()) + " but only " +
                         std::to_string(k) + " dual elements were supplied");
  }
  const std::size_t rank = k == 0 ? 0 : duals.front().tangent.size();
  std::vector<Expr> bases;
  bases.reserve(k);
  for (const DualElement& d : duals) {
    if (d.tangent.size() != rank) throw DimensionError("dual elements disagree on module rank");
    bases.push_back(d.base);
  }

  DualElement out{substitute(g, bases), std::vector<Expr>(rank, Expr::constant(0.0))};
  std::vector<std::vector<Expr>> tangent_terms(rank);
  for (std::size_t i = 0; i < k; ++i) {
    if (!g.depends_on(i)) continue;
    const Expr dg = substitute(partial(g, i, k), bases);
    for (std::size_t c = 0; c < rank; ++c) tangent_terms[c].push_back(dg * duals[i].tangent[c]);
  }
  for (std::size_t c = 0; c < rank; ++c) out.tangent[c] = simplify(Expr::sum(std::move(tangent_terms[c])));
  return out;
}

ClosednessReport is_closed(const SmoothOneForm& form, std::size_t points, double tol,
                           const QuadConfig& cfg, std::uint64_t seed) {
  const std::size_t n = form.dimension();
  std::vector<std::pair<Expr, Expr>> cross;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      cross.emplace_back(partial(form[i], j, n), partial(form[j], i, n));
    }
  }
  ClosednessReport report;
  if (cross.empty()) return report;
  Rng rng(seed);
  std::vector<double> v(n);
  for (std::size_t p = 0; p < points; ++p) {
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    for (const auto& [a, b] : cross) {
      const double gap = std::abs(evaluate(a, v, cfg) - evaluate(b, v, cfg));
      report.worst_asymmetry = std::max(report.worst_asymmetry, gap);
    }
  }
  report.closed = report.worst_asymmetry <= tol;
  return report;
}

std::string to_string(const SmoothOneForm& form) {
  std::string out;
  for (std::size_t i = 0; i < form.dimension(); ++i) {
    if (i > 0) out += ", ";
    out += cinf::to_string(form[i]);
  }
  return out;
}

std::string to_string(const DualElement& dual) {
  std::string out = "(" + cinf::to_string(dual.base) + ";";
  for (std::size_t c = 0; c < dual.tangent.size(); ++c) {
    out += c == 0 ? " " : ", ";
    out += cinf::to_string(dual.tangent[c]);
  }
  return out + ")";
}

DualElement parse_dual(std::string_view text, std::size_t dimension) {
  const auto open = text.find('(');
  const auto semi = text.find(';');
  const auto close = text.rfind(')');
  if (open == std::string_view::npos || semi == std::string_view::npos ||
      close == std::string_view::npos || !(open < semi && semi < close)) {
    throw ParseError("dual element must have the form (base; tangent, ...)", 1,
                     open == std::string_view::npos ? 1 : open + 1);
  }
  auto reposition = [](const ParseError& e, std::size_t offset) {
    return ParseError(e.message(), e.line(), e.column() + offset);
  };
  DualElement out;
  try {
    out.base = parse_expr(text.substr(open + 1, semi - open - 1), dimension);
  } catch (const ParseError& e) {
    throw reposition(e, open + 1);
  }
  const std::string_view rest = text.substr(semi + 1, close - semi - 1);
  if (rest.find_first_not_of(" \t") != std::string_view::npos) {
    try {
      out.tangent = parse_expr_list(rest, dimension);
    } catch (const ParseError& e) {
      throw reposition(e, semi + 1);
    }
  }
  return out;
}

}  // namespace cinf::smooth
