#include "vortex/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace vortex {

namespace {

constexpr double kMinStep = 1e-16;
constexpr double kMinBbStep = 1e-6;
constexpr double kMaxBbStep = 1e6;

// int_0^R r u dr, used to fix the overall sign of the solution.
double first_moment(const Objective& objective, const Eigen::VectorXd& c) {
  const NodalSamples s = sample(objective.table(), c);
  return (objective.table().weights().array() * objective.table().nodes().array() * s.u).sum();
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iters < 0) throw InvalidArgument("max_iters must be non-negative");
  if (!(grad_tol > 0.0)) throw InvalidArgument("grad_tol must be positive");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) {
    throw InvalidArgument("step_shrink must lie in (0, 1)");
  }
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw InvalidArgument("armijo_c must lie in (0, 1)");
  if (!(initial_step > 0.0)) throw InvalidArgument("initial_step must be positive");
  if (positivity_grid < 1) throw InvalidArgument("positivity_grid must be positive");
}

QuadratureRule QuadratureOptions::rule_for(const ProblemSpec& spec) const {
  if (panel_count <= 0) return QuadratureRule(spec.R, std::max(8, spec.N), nodes_per_panel);
  return QuadratureRule(spec.R, panel_count, nodes_per_panel);
}

std::vector<double> interior_grid(double radius, int count) {
  std::vector<double> grid(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) grid[i] = radius * (i + 1) / (count + 1.0);
  return grid;
}

Profile initial_guess(const ProblemSpec& spec, std::shared_ptr<const BasisSet> basis,
                      const QuadratureRule& rule) {
  spec.validate();
  const double b = std::sqrt(30.0 * spec.P0 / (std::numbers::pi * std::pow(spec.R, 6)));
  const double radius = spec.R;
  Profile guess = project([b, radius](double r) { return b * r * (radius - r); }, std::move(basis),
                          rule);
  const double norm = guess.coeffs.norm();
  if (!(norm > 0.0)) throw IllConditionedBasis("trial function projects to zero");
  guess.coeffs *= std::sqrt(spec.P0) / norm;
  return guess;
}

SolveResult minimize(const ProblemSpec& spec, std::shared_ptr<const BasisSet> basis,
                     const QuadratureRule& rule, const SolverConfig& config) {
  spec.validate();
  config.validate();
  const Objective objective(basis, rule);
  const double radius = std::sqrt(spec.P0);

  Eigen::VectorXd c = initial_guess(spec, basis, rule).coeffs;
  double f = objective.value(c);

  SolveResult result;
  if (config.record_history) result.history.push_back(f);

  Eigen::VectorXd tangent;
  double tangent_norm = 0.0;
  double multiplier = 0.0;
  auto update_gradient = [&] {
    const Eigen::VectorXd g = objective.gradient(c);
    multiplier = g.dot(c) / c.squaredNorm();
    tangent = g - multiplier * c;
    tangent_norm = tangent.norm();
  };

  update_gradient();
  Eigen::VectorXd previous_c, previous_tangent;
  int iterations = 0;
  bool converged = tangent_norm <= config.grad_tol * std::max(1.0, std::abs(f));
  while (!converged && iterations < config.max_iters) {
    const double slope = tangent_norm * tangent_norm;
    double step = config.initial_step;
    if (config.step_rule == StepRule::kBarzilaiBorwein && iterations > 0) {
      const Eigen::VectorXd s = c - previous_c;
      const Eigen::VectorXd y = tangent - previous_tangent;
      const double sy = s.dot(y);
      if (sy > 0.0) step = std::clamp(s.squaredNorm() / sy, kMinBbStep, kMaxBbStep);
    }
    previous_c = c;
    previous_tangent = tangent;
    Eigen::VectorXd trial;
    double change = 0.0;
    for (;;) {
      trial = c - step * tangent;
      trial *= radius / trial.norm();
      // Descent is measured on F - (lambda/2)(|c|^2 - P0), which equals F on the
      // sphere but is blind to the radial rounding error of the retraction.
      const double radial = (trial - c).dot(trial + c);
      change = objective.difference(c, trial) - 0.5 * multiplier * radial;
      if (change <= -config.armijo_c * step * slope) break;
      step *= config.step_shrink;
      if (step < kMinStep) {
        std::ostringstream msg;
        msg << "line search stalled after " << iterations << " iterations (tangential gradient "
            << tangent_norm << ")";
        throw StalledSolver(msg.str());
      }
    }
    c = std::move(trial);
    f = objective.value(c);
    ++iterations;
    if (config.record_history) result.history.push_back(f);
    update_gradient();
    converged = tangent_norm <= config.grad_tol * std::max(1.0, std::abs(f));
  }

  if (first_moment(objective, c) < 0.0) c = -c;

  result.profile = Profile{c, basis};
  result.objective = f;
  result.iterations = iterations;
  result.converged = converged;
  result.gradient_norm = tangent_norm;
  result.beta = objective.beta(c);
  result.delta_beta = objective.delta_beta(c, result.beta);
  result.multiplier = lagrange_multiplier(objective.gradient(c), c);

  result.positive = true;
  for (double r : interior_grid(spec.R, config.positivity_grid)) {
    if (!(eval(result.profile, r) > 0.0)) {
      result.positive = false;
      break;
    }
  }
  return result;
}

SolveResult minimize(const ProblemSpec& spec, const SolverConfig& config,
                     const QuadratureOptions& quadrature) {
  spec.validate();
  const QuadratureRule rule = quadrature.rule_for(spec);
  return minimize(spec, make_basis(spec, rule), rule, config);
}

std::vector<SweepItem> sweep(const std::vector<ProblemSpec>& specs, const SolverConfig& config,
                             const QuadratureOptions& quadrature, int threads) {
  std::vector<SweepItem> items(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) items[i].spec = specs[i];
  if (specs.empty()) return items;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        items[i].result = minimize(items[i].spec, config, quadrature);
      } catch (const std::exception& e) {
        items[i].error = e.what();
      }
    }
  };

  std::size_t count = threads > 0 ? static_cast<std::size_t>(threads)
                                  : std::max(1u, std::thread::hardware_concurrency());
  count = std::min(count, items.size());
  if (count <= 1) {
    worker();
    return items;
  }
  std::vector<std::jthread> pool;
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  pool.clear();
  return items;
}

}  // namespace vortex
