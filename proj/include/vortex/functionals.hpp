#pragma once

#include <Eigen/Dense>

#include "vortex/basis.hpp"

namespace vortex {

/// Action I(u), flux P(u) = 2 pi int r u^2 dr and energy E(u) of one profile.
struct FunctionalValue {
  double action = 0.0;
  double flux = 0.0;
  double energy = 0.0;
};

struct EigenResult {
  double beta = 0.0;
  double delta_beta = 0.0;
};

/// Lagrange multiplier of grad F = lambda * grad P at a point on the sphere,
/// with grad P = 2c in orthonormal coordinates.
struct Multiplier {
  double lambda = 0.0;
  /// -4 pi lambda; equals the propagation constant at a KKT point.
  double beta = 0.0;
  /// |g - (g.c/|c|^2) c| / |g|; zero exactly at a KKT point.
  double collinearity_residual = 0.0;
};

/// Objective, gradient and eigenvalue quantities for one (spec, basis, rule)
/// triple, with the basis tabulated once on the quadrature nodes. All methods
/// take coordinates c in the orthonormal basis.
class Objective {
 public:
  Objective(std::shared_ptr<const BasisSet> basis, const QuadratureRule& rule);

  const ProblemSpec& spec() const noexcept { return basis_->spec(); }
  const BasisTable& table() const noexcept { return table_; }
  const std::shared_ptr<const BasisSet>& basis() const noexcept { return basis_; }

  /// F(c) = I(sum c_j psi_j).
  double value(const Eigen::VectorXd& c) const;
  /// F(to) - F(from), evaluated term by term so small decreases are not lost
  /// to cancellation between two nearly equal sums.
  double difference(const Eigen::VectorXd& from, const Eigen::VectorXd& to) const;
  /// Component j = <I'(u), psi_j>.
  Eigen::VectorXd gradient(const Eigen::VectorXd& c) const;

  FunctionalValue functionals(const Eigen::VectorXd& c) const;
  double flux(const Eigen::VectorXd& c) const;
  double beta(const Eigen::VectorXd& c) const;
  double delta_beta(const Eigen::VectorXd& c, double beta) const;

 private:
  std::shared_ptr<const BasisSet> basis_;
  BasisTable table_;
};

double action(const Profile& profile, const QuadratureRule& rule);
double flux(const Profile& profile, const QuadratureRule& rule);
double energy(const Profile& profile, const QuadratureRule& rule);
FunctionalValue evaluate_functionals(const Profile& profile, const QuadratureRule& rule);

Eigen::VectorXd gradient_F(const Profile& profile, const QuadratureRule& rule);

/// beta = -(2 pi / P) int { r u_r^2 + m^2 u^2 / r + r u^2 / (1 + alpha u^2) } dr
/// with P the computed flux. Throws InvalidArgument for a zero profile.
double beta_from_profile(const Profile& profile, const QuadratureRule& rule);

/// int ( (r u_r)_r - m^2 u / r - r u / (1 + alpha u^2) - beta r u )^2 dr.
double residual_delta_beta(const Profile& profile, double beta, const QuadratureRule& rule);

Multiplier lagrange_multiplier(const Eigen::VectorXd& gradient, const Eigen::VectorXd& coeffs);

}  // namespace vortex
