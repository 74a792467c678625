#include "vortex/quadrature.hpp"

#include <algorithm>
#include <numbers>

namespace vortex {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton on P_n from the Chebyshev-like initial guess; roots are symmetric.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureRule::QuadratureRule(double radius, int panel_count, int nodes_per_panel)
    : radius_(radius), panel_count_(panel_count), nodes_per_panel_(nodes_per_panel) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("quadrature radius must be positive and finite");
  }
  if (panel_count < 1) throw InvalidArgument("panel_count must be >= 1");
  if (nodes_per_panel < 2) throw InvalidArgument("nodes_per_panel must be >= 2");

  std::vector<double> x, w;
  gauss_legendre(nodes_per_panel, x, w);
  const double h = radius / panel_count;
  nodes_.reserve(static_cast<std::size_t>(panel_count) * nodes_per_panel);
  weights_.reserve(nodes_.capacity());
  for (int p = 0; p < panel_count; ++p) {
    const double mid = (p + 0.5) * h;
    for (int k = 0; k < nodes_per_panel; ++k) {
      nodes_.push_back(mid + 0.5 * h * x[k]);
      weights_.push_back(0.5 * h * w[k]);
    }
  }
}

QuadratureRule build_rule(double radius, int panel_count, int nodes_per_panel) {
  return QuadratureRule(radius, panel_count, nodes_per_panel);
}

QuadratureRule default_rule(double radius, int basis_size) {
  return QuadratureRule(radius, std::max(8, basis_size), kDefaultNodesPerPanel);
}

}  // namespace vortex
