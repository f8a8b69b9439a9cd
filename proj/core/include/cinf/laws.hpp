#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cinf/expr.hpp"
#include "cinf/generators.hpp"
#include "cinf/quadrature.hpp"
#include "cinf/sym.hpp"

namespace cinf::laws {

enum class Suite {
  DAxioms,
  SAxioms,
  Calculus,
  Interchange,
  Epsilon,
  Naturality,
  LambdaCompat,
  Chain,
  Inverses,
  RotaBaxter,
  Derivation,
};

enum class Mode { Poly, Smooth };

/// Every suite, in report order.
const std::array<Suite, 11>& all_suites() noexcept;

/// Kebab-case id, e.g. "d-axioms".
std::string_view to_string(Suite suite) noexcept;
/// "poly-exact" or "smooth-numeric".
std::string_view to_string(Mode mode) noexcept;

/// Throws std::invalid_argument for an unknown id.
Suite parse_suite(std::string_view id);
/// Accepts "poly", "poly-exact", "smooth" and "smooth-numeric".
Mode parse_mode(std::string_view id);

/// False for lambda-compat in poly mode, which compares the two modalities
/// and so has no exact-only form.
bool supports(Suite suite, Mode mode) noexcept;

struct TrialConfig {
  std::uint64_t seed = 42;
  /// Unset: the suite's default count.
  std::optional<std::size_t> trials;
  /// Evaluation points per smooth trial.
  std::size_t points = 10;
  /// Unset: each identity uses its own default. Ignored in poly mode.
  std::optional<double> tolerance;
  QuadConfig quad;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;

  /// Throws std::invalid_argument on zero trials or points, or a non-positive tolerance.
  void validate() const;
};

/// Replacement for the polynomial integral transformation, used by the
/// negative control. Applies everywhere poly-mode suites call it,
/// including inside the Rota-Baxter operator.
using PolyIntegral = std::function<Poly(const sym::PolyOneForm&)>;

struct SuiteOptions {
  PolyIntegral poly_integral;
};

struct LawReport {
  std::string law;
  Mode mode = Mode::Poly;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t inconclusive = 0;
  /// Largest discrepancy seen: absolute, except finite-difference checks which are relative.
  double worst_error = 0.0;
  std::int64_t elapsed_ms = 0;
  /// Seed, identity and inputs of the first few failing trials.
  std::vector<std::string> counterexamples;

  /// No failures and at most 5% inconclusive trials.
  bool passed() const noexcept;
};

/// Default trial count of a suite in the given mode.
std::size_t default_trials(Suite suite, Mode mode) noexcept;

/// Runs one suite. Trial k draws from mix_seed(seed, k), so the report is
/// independent of thread count except for elapsed_ms. Throws
/// std::invalid_argument if the suite does not support the mode.
LawReport run_suite(Suite suite, Mode mode, const TrialConfig& trial, const GenConfig& gen = {},
                    const SuiteOptions& options = {});

struct Deviation {
  bool equal = true;
  double max_abs = 0.0;
  double max_rel = 0.0;  ///< |f - g| / max(|g|, 1)
};

/// Compares f and g at every point. NonConvergence propagates.
Deviation pointwise_equal(const Expr& f, const Expr& g, std::span<const std::vector<double>> points,
                          double tol, const QuadConfig& quad = {});

/// The per-variable rule x^α ⊗ e_i ↦ x^α x_i / (α_i + 1), which agrees with
/// the integral transformation in one variable only.
Poly naive_integral(const sym::PolyOneForm& form);

}  // namespace cinf::laws
