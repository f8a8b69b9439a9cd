#include "cinf/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cinf {

void QuadConfig::validate() const {
  if (order < 2) throw std::invalid_argument("quadrature order must be at least 2");
  if (max_depth < 1) throw std::invalid_argument("quadrature depth must be positive");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
}

namespace {

struct RuleTable {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on P_n from the Tricomi initial guesses.
RuleTable compute_rule(unsigned n) {
  RuleTable table;
  table.nodes.resize(n);
  table.weights.resize(n);
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (unsigned k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (unsigned k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    table.nodes[i] = -x;
    table.nodes[n - 1 - i] = x;
    table.weights[i] = w;
    table.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) table.nodes[n / 2] = 0.0;
  return table;
}

struct Panel {
  double value;
  double error;
};

class AdaptiveIntegrator {
 public:
  AdaptiveIntegrator(const std::function<double(double)>& f, const QuadConfig& cfg)
      : f_(f), cfg_(cfg), coarse_(gauss_legendre(cfg.order)), fine_(gauss_legendre(2 * cfg.order)) {}

  QuadResult run() {
    const Panel whole = estimate(0.0, 1.0);
    tol_ = std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(whole.value));
    QuadResult result;
    refine(0.0, 1.0, whole, 0, result);
    return result;
  }

 private:
  double apply(const GaussRule& rule, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) sum += rule.weights[k] * f_(mid + half * rule.nodes[k]);
    return half * sum;
  }

  Panel estimate(double a, double b) const {
    const double hi = apply(fine_, a, b);
    const double lo = apply(coarse_, a, b);
    return {hi, std::abs(hi - lo)};
  }

  void refine(double a, double b, const Panel& panel, unsigned depth, QuadResult& out) const {
    const double share = tol_ * (b - a);
    if (panel.error <= share || depth >= cfg_.max_depth) {
      if (panel.error > share) out.converged = false;
      out.value += panel.value;
      out.error += panel.error;
      out.panels += 1;
      return;
    }
    const double mid = 0.5 * (a + b);
    refine(a, mid, estimate(a, mid), depth + 1, out);
    refine(mid, b, estimate(mid, b), depth + 1, out);
  }

  const std::function<double(double)>& f_;
  const QuadConfig& cfg_;
  GaussRule coarse_;
  GaussRule fine_;
  double tol_ = 0.0;
};

}  // namespace

GaussRule gauss_legendre(unsigned order) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<const RuleTable>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, std::make_unique<const RuleTable>(compute_rule(order))).first;
  }
  return {it->second->nodes, it->second->weights};
}

QuadResult integrate_unit(const std::function<double(double)>& f, const QuadConfig& cfg) {
  cfg.validate();
  return AdaptiveIntegrator(f, cfg).run();
}

}  // namespace cinf
