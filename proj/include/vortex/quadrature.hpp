#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <sstream>
#include <vector>

#include "vortex/errors.hpp"

namespace vortex {

/// Composite Gauss-Legendre rule on [0, R]. All nodes are strictly interior,
/// so integrands with a removable 1/r singularity (u^2/r with u(0) = 0) are
/// never evaluated at r = 0.
class QuadratureRule {
 public:
  QuadratureRule(double radius, int panel_count, int nodes_per_panel);

  double radius() const noexcept { return radius_; }
  int panel_count() const noexcept { return panel_count_; }
  int nodes_per_panel() const noexcept { return nodes_per_panel_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  double radius_;
  int panel_count_;
  int nodes_per_panel_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

inline constexpr int kDefaultNodesPerPanel = 16;

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

QuadratureRule build_rule(double radius, int panel_count, int nodes_per_panel);

/// Default resolution for an N-mode basis: max(8, N) panels of 16 nodes.
QuadratureRule default_rule(double radius, int basis_size);

/// Sum of weight * f(node). Throws NumericalDomainError when f is not finite
/// at some node.
template <typename F>
double integrate(const QuadratureRule& rule, F&& f) {
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double value = f(nodes[i]);
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrand is not finite at node r = " << nodes[i] << " (value "
          << value << ")";
      throw NumericalDomainError(msg.str());
    }
    sum += weights[i] * value;
  }
  return sum;
}

}  // namespace vortex
