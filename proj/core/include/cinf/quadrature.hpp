#pragma once

#include <functional>
#include <span>

namespace cinf {

struct QuadConfig {
  unsigned order = 16;       ///< Gauss-Legendre points per panel
  unsigned max_depth = 12;   ///< bisection levels before giving up
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;

  /// Throws std::invalid_argument unless order >= 2, max_depth >= 1 and both tolerances are positive.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  ///< estimated absolute error, >= 0
  unsigned panels = 0;
  bool converged = true;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};

/// Rule of the given order. Tables are computed once per order and shared.
GaussRule gauss_legendre(unsigned order);

/// Integrates f over [0, 1].
///
/// Each panel is integrated with order k and 2k; their difference is the
/// panel's error estimate and the 2k value is kept. Panels whose estimate
/// exceeds their share of max(abs_tol, rel_tol*|I|) are bisected until
/// max_depth. A result with converged == false still carries the best
/// estimate. f may itself call integrate_unit.
QuadResult integrate_unit(const std::function<double(double)>& f, const QuadConfig& cfg = {});

}  // namespace cinf
