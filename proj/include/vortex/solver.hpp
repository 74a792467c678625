#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vortex/functionals.hpp"

namespace vortex {

/// How each backtracking search picks its first trial step.
enum class StepRule {
  /// Always `initial_step`.
  kFixed,
  /// Barzilai-Borwein step |s|^2 / s.y from the last two iterates, falling
  /// back to `initial_step` on the first iteration or when s.y <= 0.
  kBarzilaiBorwein,
};

struct SolverConfig {
  int max_iters = 10000;
  /// Convergence when |tangential gradient| <= grad_tol * max(1, |F|).
  double grad_tol = 1e-8;
  double step_shrink = 0.5;
  double armijo_c = 1e-4;
  /// Trial step at the start of a backtracking search.
  double initial_step = 1.0;
  StepRule step_rule = StepRule::kBarzilaiBorwein;
  int positivity_grid = 2048;
  /// Keep F at every accepted iterate in SolveResult::history.
  bool record_history = false;

  void validate() const;
};

/// Quadrature resolution used when the solver builds its own rule.
/// panel_count <= 0 selects max(8, N).
struct QuadratureOptions {
  int panel_count = 0;
  int nodes_per_panel = kDefaultNodesPerPanel;

  QuadratureRule rule_for(const ProblemSpec& spec) const;
};

struct SolveResult {
  Profile profile;
  double beta = 0.0;
  double delta_beta = 0.0;
  /// Final F(c).
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  /// u > 0 at every interior point of the positivity grid.
  bool positive = false;
  double gradient_norm = 0.0;
  /// Multiplier route to beta, -4 pi lambda from grad F = lambda grad P.
  Multiplier multiplier;
  std::vector<double> history;
};

/// The trial function sqrt(30 P0 / (pi R^6)) r (R - r) projected onto the
/// basis and rescaled to flux exactly P0.
Profile initial_guess(const ProblemSpec& spec, std::shared_ptr<const BasisSet> basis,
                      const QuadratureRule& rule);

/// Minimizes F(c) on the sphere |c|^2 = P0 by projected gradient descent with
/// a renormalizing retraction and Armijo backtracking. Non-convergence is
/// reported through SolveResult::converged; a collapsed line search throws
/// StalledSolver.
SolveResult minimize(const ProblemSpec& spec, std::shared_ptr<const BasisSet> basis,
                     const QuadratureRule& rule, const SolverConfig& config = {});

/// Convenience overload that builds the rule and basis from `quadrature`.
SolveResult minimize(const ProblemSpec& spec, const SolverConfig& config = {},
                     const QuadratureOptions& quadrature = {});

struct SweepItem {
  ProblemSpec spec;
  std::optional<SolveResult> result;
  std::string error;

  bool ok() const noexcept { return result.has_value(); }
};

/// Independent solves in input order. Failures are recorded per item.
/// `threads` <= 0 uses the hardware concurrency.
std::vector<SweepItem> sweep(const std::vector<ProblemSpec>& specs, const SolverConfig& config = {},
                             const QuadratureOptions& quadrature = {}, int threads = 0);

/// Interior sample points R*i/(count+1), i = 1..count.
std::vector<double> interior_grid(double radius, int count);

}  // namespace vortex
