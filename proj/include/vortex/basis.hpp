#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>

#include "vortex/quadrature.hpp"

namespace vortex {

/// One solve: domain radius, vortex number, coupling parameter, prescribed
/// energy flux and basis dimension.
struct ProblemSpec {
  double R = 20.0;
  int m = 1;
  double alpha = 1.0;
  double P0 = 1.0;
  int N = 20;

  /// Throws InvalidArgument naming the first violated field.
  void validate() const;
  double m_squared() const noexcept { return static_cast<double>(m) * m; }
};

/// Entry (i, j) = 2*pi * int_0^R r sin(i pi r/R) sin(j pi r/R) dr.
Eigen::MatrixXd gram_matrix(const ProblemSpec& spec, const QuadratureRule& rule);

/// Modified Gram-Schmidt in the inner product defined by `gram`, processing
/// modes in increasing frequency. Returns lower-triangular T with positive
/// diagonal and T * gram * T^T = I.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& gram);

/// Orthonormal basis psi_j = sum_k T(j,k) sin(k pi r / R).
class BasisSet {
 public:
  BasisSet(const ProblemSpec& spec, const QuadratureRule& rule);

  const ProblemSpec& spec() const noexcept { return spec_; }
  int size() const noexcept { return spec_.N; }
  double radius() const noexcept { return spec_.R; }
  const Eigen::MatrixXd& transform() const noexcept { return transform_; }
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }

  /// Coefficients of sum_j c_j psi_j in the raw sine modes, i.e. T^T c.
  Eigen::VectorXd sine_coefficients(const Eigen::VectorXd& coeffs) const;

  /// Raw sine mode k (1-based) or its first/second derivative at r.
  double sine_mode(int k, double r, int order) const;

 private:
  ProblemSpec spec_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd transform_;
};

std::shared_ptr<const BasisSet> make_basis(const ProblemSpec& spec, const QuadratureRule& rule);

/// u = sum_j coeffs_j psi_j.
struct Profile {
  Eigen::VectorXd coeffs;
  std::shared_ptr<const BasisSet> basis;

  const ProblemSpec& spec() const { return basis->spec(); }
  /// Energy flux in closed form: the squared norm of the coefficients.
  double coefficient_flux() const { return coeffs.squaredNorm(); }
};

/// u (order 0), u_r (order 1) or u_rr (order 2) at r in [0, R], from the
/// analytic derivatives of the sine modes.
double eval(const Profile& profile, double r, int order = 0);

/// Coefficients c_j = <f, psi_j>.
Profile project(const std::function<double(double)>& f,
                std::shared_ptr<const BasisSet> basis, const QuadratureRule& rule);

/// psi_j and its first two derivatives tabulated on the nodes of one rule.
/// Rows are basis functions, columns are nodes.
class BasisTable {
 public:
  BasisTable(const BasisSet& basis, const QuadratureRule& rule);

  const QuadratureRule& rule() const noexcept { return rule_; }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  const Eigen::MatrixXd& first() const noexcept { return first_; }
  const Eigen::MatrixXd& second() const noexcept { return second_; }
  const Eigen::VectorXd& nodes() const noexcept { return nodes_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }

 private:
  QuadratureRule rule_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  Eigen::MatrixXd values_;
  Eigen::MatrixXd first_;
  Eigen::MatrixXd second_;
};

/// u, u_r, u_rr on the nodes of a BasisTable.
struct NodalSamples {
  Eigen::ArrayXd u;
  Eigen::ArrayXd ur;
  Eigen::ArrayXd urr;
};

NodalSamples sample(const BasisTable& table, const Eigen::VectorXd& coeffs,
                    bool with_second = false);

}  // namespace vortex
