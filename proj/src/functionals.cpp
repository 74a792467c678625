#include "vortex/functionals.hpp"

#include <cmath>
#include <numbers>

namespace vortex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw NumericalDomainError(std::string(what) + " is not finite");
  }
}

}  // namespace

Objective::Objective(std::shared_ptr<const BasisSet> basis, const QuadratureRule& rule)
    : basis_(std::move(basis)), table_(*basis_, rule) {}

double Objective::value(const Eigen::VectorXd& c) const {
  const NodalSamples s = sample(table_, c);
  const auto r = table_.nodes().array();
  const auto w = table_.weights().array();
  const double alpha = spec().alpha;
  const Eigen::ArrayXd integrand = r * s.ur.square() + spec().m_squared() / r * s.u.square() +
                                   (r / alpha) * (alpha * s.u.square()).log1p();
  const double result = 0.5 * (w * integrand).sum();
  require_finite(result, "action integrand");
  return result;
}

double Objective::difference(const Eigen::VectorXd& from, const Eigen::VectorXd& to) const {
  const Eigen::VectorXd delta = to - from;
  const Eigen::VectorXd total = to + from;
  const NodalSamples d = sample(table_, delta);
  const NodalSamples t = sample(table_, total);
  const NodalSamples u0 = sample(table_, from);
  const auto r = table_.nodes().array();
  const auto w = table_.weights().array();
  const double alpha = spec().alpha;
  // ln(1 + a u1^2) - ln(1 + a u0^2) = log1p(a (u1^2 - u0^2) / (1 + a u0^2))
  const Eigen::ArrayXd log_term =
      (alpha * d.u * t.u / (1.0 + alpha * u0.u.square())).log1p();
  const Eigen::ArrayXd integrand =
      r * d.ur * t.ur + spec().m_squared() / r * d.u * t.u + (r / alpha) * log_term;
  const double result = 0.5 * (w * integrand).sum();
  require_finite(result, "action difference");
  return result;
}

Eigen::VectorXd Objective::gradient(const Eigen::VectorXd& c) const {
  const NodalSamples s = sample(table_, c);
  const auto r = table_.nodes().array();
  const auto w = table_.weights().array();
  const double alpha = spec().alpha;
  const Eigen::VectorXd stiff = (w * r * s.ur).matrix();
  const Eigen::VectorXd mass =
      (w * (spec().m_squared() / r * s.u + r * s.u / (1.0 + alpha * s.u.square()))).matrix();
  return table_.first() * stiff + table_.values() * mass;
}

FunctionalValue Objective::functionals(const Eigen::VectorXd& c) const {
  const NodalSamples s = sample(table_, c);
  const auto r = table_.nodes().array();
  const auto w = table_.weights().array();
  const double alpha = spec().alpha;
  FunctionalValue out;
  out.energy = (w * (r * s.ur.square() + spec().m_squared() / r * s.u.square())).sum();
  out.flux = kTwoPi * (w * r * s.u.square()).sum();
  out.action = 0.5 * out.energy + 0.5 * (w * (r / alpha) * (alpha * s.u.square()).log1p()).sum();
  require_finite(out.action, "action integrand");
  return out;
}

double Objective::flux(const Eigen::VectorXd& c) const {
  const NodalSamples s = sample(table_, c);
  return kTwoPi * (table_.weights().array() * table_.nodes().array() * s.u.square()).sum();
}

double Objective::beta(const Eigen::VectorXd& c) const {
  const NodalSamples s = sample(table_, c);
  const auto r = table_.nodes().array();
  const auto w = table_.weights().array();
  const Eigen::ArrayXd u2 = s.u.square();
  const double p = kTwoPi * (w * r * u2).sum();
  require_finite(p, "flux");
  if (!(p > 0.0)) throw InvalidArgument("beta is undefined for a profile with zero flux");
  const double integral =
      (w * (r * s.ur.square() + spec().m_squared() / r * u2 + r * u2 / (1.0 + spec().alpha * u2)))
          .sum();
  const double result = -kTwoPi / p * integral;
  require_finite(result, "beta");
  return result;
}

double Objective::delta_beta(const Eigen::VectorXd& c, double beta) const {
  const NodalSamples s = sample(table_, c, true);
  const auto r = table_.nodes().array();
  const auto w = table_.weights().array();
  // (r u_r)_r = u_r + r u_rr
  const Eigen::ArrayXd residual = s.ur + r * s.urr - spec().m_squared() / r * s.u -
                                  r * s.u / (1.0 + spec().alpha * s.u.square()) - beta * r * s.u;
  const double result = (w * residual.square()).sum();
  require_finite(result, "residual");
  return result;
}

double action(const Profile& profile, const QuadratureRule& rule) {
  return Objective(profile.basis, rule).value(profile.coeffs);
}

double flux(const Profile& profile, const QuadratureRule& rule) {
  return Objective(profile.basis, rule).flux(profile.coeffs);
}

double energy(const Profile& profile, const QuadratureRule& rule) {
  return Objective(profile.basis, rule).functionals(profile.coeffs).energy;
}

FunctionalValue evaluate_functionals(const Profile& profile, const QuadratureRule& rule) {
  return Objective(profile.basis, rule).functionals(profile.coeffs);
}

Eigen::VectorXd gradient_F(const Profile& profile, const QuadratureRule& rule) {
  return Objective(profile.basis, rule).gradient(profile.coeffs);
}

double beta_from_profile(const Profile& profile, const QuadratureRule& rule) {
  return Objective(profile.basis, rule).beta(profile.coeffs);
}

double residual_delta_beta(const Profile& profile, double beta, const QuadratureRule& rule) {
  return Objective(profile.basis, rule).delta_beta(profile.coeffs, beta);
}

Multiplier lagrange_multiplier(const Eigen::VectorXd& gradient, const Eigen::VectorXd& coeffs) {
  const double c_sq = coeffs.squaredNorm();
  if (!(c_sq > 0.0)) throw InvalidArgument("multiplier is undefined at c = 0");
  const double along = gradient.dot(coeffs) / c_sq;
  Multiplier out;
  out.lambda = 0.5 * along;
  out.beta = -4.0 * std::numbers::pi * out.lambda;
  const double g_norm = gradient.norm();
  out.collinearity_residual = g_norm > 0.0 ? (gradient - along * coeffs).norm() / g_norm : 0.0;
  return out;
}

}  // namespace vortex
