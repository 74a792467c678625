#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vortex/solver.hpp"

namespace vortex {

/// First positive zero of J0 as used in the bounds below.
inline constexpr double kFirstBesselZero = 2.404825;

/// Uniform sampling used for peak search and tail fitting.
inline constexpr int kPeakGridPoints = 4096;

struct BetaCheck {
  double threshold = 0.0;
  bool pass = false;
};

struct PeakCheck {
  double bound_sq = 0.0;
  double max_u_sq = 0.0;
  bool pass = false;
};

struct Peak {
  double radius = 0.0;
  double value = 0.0;
};

/// Exponential fit ln u^2 ~ a - sqrt(eps) r over a tail window.
struct TailFit {
  double epsilon0 = 0.0;
  double log_amplitude = 0.0;
  /// max over the window of ln u^2 - fitted line.
  double max_excess = 0.0;
  int points = 0;
};

struct DecayCheck {
  bool applicable = false;
  std::optional<double> epsilon0_fit;
  /// 2 (beta + m^2/R^2 + 1); reported, not asserted.
  double epsilon0_floor = 0.0;
  std::optional<bool> pass;
};

struct PoincareCheck {
  double ratio = 0.0;
  bool pass = false;
};

struct BoundsReport {
  double beta_upper = 0.0;
  bool beta_ok = false;
  double peak_bound_sq = 0.0;
  double max_u_sq = 0.0;
  bool peak_ok = false;
  bool decay_applicable = false;
  std::optional<double> epsilon0_fit;
  double epsilon0_floor = 0.0;
  std::optional<bool> decay_ok;
  double poincare_ratio = 0.0;
  bool poincare_ok = false;
  /// Flux recomputed from the profile, compared against the prescribed P0.
  double flux = 0.0;
  bool flux_ok = false;

  /// Every applicable check passed.
  bool all_ok() const noexcept {
    return beta_ok && peak_ok && poincare_ok && flux_ok &&
           (!decay_applicable || decay_ok.value_or(false));
  }
};

/// Relative flux mismatch tolerated by the validators.
inline constexpr double kFluxTolerance = 1e-3;

/// A profile known only through samples on a uniform grid including 0 and R,
/// as read back from profile.csv.
struct SampledProfile {
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> ur;
  std::vector<double> urr;
};

/// Largest u on a 4096-point uniform grid on [0, R] plus the rule's nodes.
Peak find_peak(const Profile& profile, const QuadratureRule& rule);

/// pass iff beta < -(m^2 + r0^2) / R^2.
BetaCheck check_beta_bound(double beta, const ProblemSpec& spec);
BetaCheck check_beta_bound(const SolveResult& result, const ProblemSpec& spec);

/// bound = -(1/alpha) [ (beta + m^2/R^2)^-1 + 1 ]; passes vacuously when the
/// bound is not positive. Throws DegenerateBound when beta + m^2/R^2 = 0.
double peak_bound_sq(double beta, const ProblemSpec& spec);
PeakCheck check_peak_bound(const SolveResult& result, const ProblemSpec& spec,
                           const QuadratureRule& rule);
PeakCheck check_peak_bound(const SolveResult& result, const ProblemSpec& spec);

/// beta > -m^2/R^2 - 1.
bool decay_applicable(double beta, const ProblemSpec& spec);

/// Least-squares fit over samples with r >= window_start, up to the last
/// point with u^2 > 1e-14. Throws InsufficientTail below 8 usable points.
TailFit fit_exponential_tail(std::span<const double> radii, std::span<const double> values,
                             double window_start);

DecayCheck fit_decay(const SolveResult& result, const ProblemSpec& spec);

/// ratio = (R^2 / r0^2) int r u_r^2 dr / int r u^2 dr; pass iff ratio >= 1 - 1e-9.
PoincareCheck check_poincare(const Profile& profile, const QuadratureRule& rule,
                             const ProblemSpec& spec);

BoundsReport validate_solution(const SolveResult& result, const ProblemSpec& spec,
                               const QuadratureRule& rule);

/// Same checks on sampled data, integrals by the trapezoidal rule.
BoundsReport validate_sampled(const SampledProfile& samples, const ProblemSpec& spec, double beta);

/// Two-field system with u carrying (m1, beta1) and v carrying (m2, beta2).
struct CoupledSpec {
  int m1 = 0;
  int m2 = 0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  bool both_nonzero = true;
  /// When !both_nonzero: true if u is the vanishing field, false if v is.
  bool u_is_zero = false;
};

struct ReducedProblem {
  int m = 0;
  double alpha = 1.0;
  double beta = 0.0;
};

struct CouplingRejection {
  std::string reason;
};

using CoupledReduction = std::variant<ReducedProblem, CouplingRejection>;

/// Reduction of the coupled system to a single equation with parameter alpha,
/// where v = sqrt(alpha - 1) u. Throws InvalidArgument for alpha_candidate < 1.
CoupledReduction reduce_coupled(const CoupledSpec& coupled, double alpha_candidate);

}  // namespace vortex
