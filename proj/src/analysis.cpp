#include "vortex/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace vortex {

namespace {

constexpr double kTailWindowFraction = 0.8;
constexpr double kTailFloor = 1e-14;
constexpr int kMinTailPoints = 8;
constexpr double kPoincareSlack = 1e-9;

std::vector<double> uniform_grid(double radius, int count) {
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) grid[i] = radius * i / (count - 1.0);
  grid.back() = radius;
  return grid;
}

}  // namespace

Peak find_peak(const Profile& profile, const QuadratureRule& rule) {
  Peak best{0.0, -std::numeric_limits<double>::infinity()};
  auto visit = [&](double r) {
    const double value = eval(profile, r);
    if (value > best.value) best = {r, value};
  };
  for (double r : uniform_grid(profile.basis->radius(), kPeakGridPoints)) visit(r);
  for (double r : rule.nodes()) visit(r);
  return best;
}

BetaCheck check_beta_bound(double beta, const ProblemSpec& spec) {
  const double threshold =
      -(spec.m_squared() + kFirstBesselZero * kFirstBesselZero) / (spec.R * spec.R);
  return {threshold, beta < threshold};
}

BetaCheck check_beta_bound(const SolveResult& result, const ProblemSpec& spec) {
  return check_beta_bound(result.beta, spec);
}

double peak_bound_sq(double beta, const ProblemSpec& spec) {
  const double shifted = beta + spec.m_squared() / (spec.R * spec.R);
  if (shifted == 0.0) throw DegenerateBound("beta + m^2/R^2 vanishes; peak bound is undefined");
  return -(1.0 / spec.alpha) * (1.0 / shifted + 1.0);
}

PeakCheck check_peak_bound(const SolveResult& result, const ProblemSpec& spec,
                           const QuadratureRule& rule) {
  PeakCheck out;
  out.bound_sq = peak_bound_sq(result.beta, spec);
  const Peak peak = find_peak(result.profile, rule);
  out.max_u_sq = peak.value * peak.value;
  out.pass = out.bound_sq <= 0.0 || out.max_u_sq > out.bound_sq;
  return out;
}

PeakCheck check_peak_bound(const SolveResult& result, const ProblemSpec& spec) {
  return check_peak_bound(result, spec, default_rule(spec.R, spec.N));
}

bool decay_applicable(double beta, const ProblemSpec& spec) {
  return beta > -spec.m_squared() / (spec.R * spec.R) - 1.0;
}

TailFit fit_exponential_tail(std::span<const double> radii, std::span<const double> values,
                             double window_start) {
  if (radii.size() != values.size()) throw InvalidArgument("radii and values differ in length");
  std::size_t last = radii.size();
  for (std::size_t i = radii.size(); i-- > 0;) {
    if (values[i] * values[i] > kTailFloor) {
      last = i;
      break;
    }
  }
  std::vector<double> xs, ys;
  if (last < radii.size()) {
    for (std::size_t i = 0; i <= last; ++i) {
      const double u_sq = values[i] * values[i];
      if (radii[i] >= window_start && u_sq > kTailFloor) {
        xs.push_back(radii[i]);
        ys.push_back(std::log(u_sq));
      }
    }
  }
  if (xs.size() < static_cast<std::size_t>(kMinTailPoints)) {
    throw InsufficientTail("only " + std::to_string(xs.size()) +
                           " usable tail points; at least 8 are required");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  TailFit fit;
  fit.points = static_cast<int>(xs.size());
  fit.log_amplitude = my - slope * mx;
  // ln u^2 = a - sqrt(eps) r; a growing tail has no positive decay rate.
  fit.epsilon0 = slope < 0.0 ? slope * slope : 0.0;
  fit.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fit.max_excess = std::max(fit.max_excess, ys[i] - (fit.log_amplitude + slope * xs[i]));
  }
  return fit;
}

DecayCheck fit_decay(const SolveResult& result, const ProblemSpec& spec) {
  DecayCheck out;
  out.applicable = decay_applicable(result.beta, spec);
  out.epsilon0_floor = 2.0 * (result.beta + spec.m_squared() / (spec.R * spec.R) + 1.0);
  if (!out.applicable) return out;

  const std::vector<double> grid = uniform_grid(spec.R, kPeakGridPoints);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = eval(result.profile, grid[i]);
  const TailFit fit = fit_exponential_tail(grid, values, kTailWindowFraction * spec.R);
  out.epsilon0_fit = fit.epsilon0;
  // The fitted envelope, inflated by one decade, must bound u^2 on the window.
  out.pass = fit.epsilon0 > 0.0 && fit.max_excess <= std::log(10.0);
  return out;
}

PoincareCheck check_poincare(const Profile& profile, const QuadratureRule& rule,
                             const ProblemSpec& spec) {
  const BasisTable table(*profile.basis, rule);
  const NodalSamples s = sample(table, profile.coeffs);
  const auto r = table.nodes().array();
  const auto w = table.weights().array();
  const double gradient_term = (w * r * s.ur.square()).sum();
  const double mass_term = (w * r * s.u.square()).sum();
  if (!(mass_term > 0.0)) throw UndefinedRatio("Poincare ratio is undefined for a zero profile");
  PoincareCheck out;
  out.ratio = spec.R * spec.R / (kFirstBesselZero * kFirstBesselZero) * gradient_term / mass_term;
  out.pass = out.ratio >= 1.0 - kPoincareSlack;
  return out;
}

BoundsReport validate_solution(const SolveResult& result, const ProblemSpec& spec,
                               const QuadratureRule& rule) {
  BoundsReport report;
  const BetaCheck beta = check_beta_bound(result, spec);
  report.beta_upper = beta.threshold;
  report.beta_ok = beta.pass;

  const PeakCheck peak = check_peak_bound(result, spec, rule);
  report.peak_bound_sq = peak.bound_sq;
  report.max_u_sq = peak.max_u_sq;
  report.peak_ok = peak.pass;

  try {
    const DecayCheck decay = fit_decay(result, spec);
    report.decay_applicable = decay.applicable;
    report.epsilon0_fit = decay.epsilon0_fit;
    report.epsilon0_floor = decay.epsilon0_floor;
    report.decay_ok = decay.pass;
  } catch (const InsufficientTail&) {
    report.decay_applicable = true;
    report.epsilon0_floor = 2.0 * (result.beta + spec.m_squared() / (spec.R * spec.R) + 1.0);
    report.decay_ok = false;
  }

  const PoincareCheck poincare = check_poincare(result.profile, rule, spec);
  report.poincare_ratio = poincare.ratio;
  report.poincare_ok = poincare.pass;

  report.flux = flux(result.profile, rule);
  report.flux_ok = std::abs(report.flux - spec.P0) <= kFluxTolerance * spec.P0;
  return report;
}

BoundsReport validate_sampled(const SampledProfile& samples, const ProblemSpec& spec,
                              double beta) {
  const std::size_t n = samples.r.size();
  if (n < 2 || samples.u.size() != n || samples.ur.size() != n) {
    throw InvalidArgument("sampled profile needs at least two rows of r, u, u_r");
  }
  auto trapezoid = [&](auto&& integrand) {
    double sum = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      sum += 0.5 * (samples.r[i] - samples.r[i - 1]) * (integrand(i) + integrand(i - 1));
    }
    return sum;
  };

  BoundsReport report;
  const BetaCheck beta_check = check_beta_bound(beta, spec);
  report.beta_upper = beta_check.threshold;
  report.beta_ok = beta_check.pass;

  report.peak_bound_sq = peak_bound_sq(beta, spec);
  const double peak = *std::max_element(samples.u.begin(), samples.u.end());
  report.max_u_sq = peak * peak;
  report.peak_ok = report.peak_bound_sq <= 0.0 || report.max_u_sq > report.peak_bound_sq;

  report.decay_applicable = decay_applicable(beta, spec);
  report.epsilon0_floor = 2.0 * (beta + spec.m_squared() / (spec.R * spec.R) + 1.0);
  if (report.decay_applicable) {
    try {
      const TailFit fit = fit_exponential_tail(samples.r, samples.u, kTailWindowFraction * spec.R);
      report.epsilon0_fit = fit.epsilon0;
      report.decay_ok = fit.epsilon0 > 0.0 && fit.max_excess <= std::log(10.0);
    } catch (const InsufficientTail&) {
      report.decay_ok = false;
    }
  }

  const double gradient_term = trapezoid([&](std::size_t i) {
    return samples.r[i] * samples.ur[i] * samples.ur[i];
  });
  const double mass_term = trapezoid([&](std::size_t i) {
    return samples.r[i] * samples.u[i] * samples.u[i];
  });
  if (!(mass_term > 0.0)) throw UndefinedRatio("Poincare ratio is undefined for a zero profile");
  report.poincare_ratio =
      spec.R * spec.R / (kFirstBesselZero * kFirstBesselZero) * gradient_term / mass_term;
  report.poincare_ok = report.poincare_ratio >= 1.0 - kPoincareSlack;

  report.flux = 2.0 * std::numbers::pi * mass_term;
  report.flux_ok = std::abs(report.flux - spec.P0) <= kFluxTolerance * spec.P0;
  return report;
}

CoupledReduction reduce_coupled(const CoupledSpec& coupled, double alpha_candidate) {
  if (!(alpha_candidate >= 1.0)) throw InvalidArgument("alpha candidate must be >= 1");
  if (!coupled.both_nonzero) {
    if (coupled.u_is_zero) return ReducedProblem{std::abs(coupled.m2), 1.0, coupled.beta2};
    return ReducedProblem{std::abs(coupled.m1), 1.0, coupled.beta1};
  }
  if (alpha_candidate == 1.0) {
    return CouplingRejection{"alpha = 1 forces v = 0, contradicting two nonzero fields"};
  }
  if (std::abs(coupled.m1) != std::abs(coupled.m2)) {
    return CouplingRejection{"nonzero proportional fields require |m1| = |m2|"};
  }
  if (coupled.beta1 != coupled.beta2) {
    return CouplingRejection{"nonzero proportional fields require beta1 = beta2"};
  }
  return ReducedProblem{std::abs(coupled.m1), alpha_candidate, coupled.beta1};
}

}  // namespace vortex
