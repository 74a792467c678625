#include "vortex/basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPivotFloor = 1e-12;
constexpr double kReorthogonalizeTol = 1e-10;

double weighted_dot(const Eigen::MatrixXd& gram, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& b) {
  return a.dot(gram * b);
}

// One modified Gram-Schmidt sweep over the rows of `rows`.
void mgs_sweep(const Eigen::MatrixXd& gram, Eigen::MatrixXd& rows, double pivot_floor) {
  const Eigen::Index n = rows.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd v = rows.row(j).transpose();
    const double norm_sq = weighted_dot(gram, v, v);
    if (!(norm_sq > pivot_floor)) {
      throw IllConditionedBasis("Gram-Schmidt pivot " + std::to_string(norm_sq) +
                                " at mode " + std::to_string(j + 1) +
                                " is not positive enough");
    }
    v /= std::sqrt(norm_sq);
    rows.row(j) = v.transpose();
    const Eigen::VectorXd gv = gram * v;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double proj = rows.row(k).dot(gv);
      rows.row(k) -= proj * v.transpose();
    }
  }
}

}  // namespace

void ProblemSpec::validate() const {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("R must be positive");
  if (!(P0 > 0.0) || !std::isfinite(P0)) throw InvalidArgument("P0 must be positive");
  if (N < 1) throw InvalidArgument("N must be at least 1");
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be >= 1");
}

Eigen::MatrixXd gram_matrix(const ProblemSpec& spec, const QuadratureRule& rule) {
  if (std::abs(rule.radius() - spec.R) > 1e-14 * spec.R) {
    throw InvalidArgument("quadrature rule radius does not match R");
  }
  const int n = spec.N;
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  const Eigen::Index q = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd sines(n, q);
  Eigen::VectorXd w(q);
  for (Eigen::Index i = 0; i < q; ++i) {
    w(i) = 2.0 * kPi * weights[i] * nodes[i];
    for (int k = 0; k < n; ++k) sines(k, i) = std::sin((k + 1) * kPi * nodes[i] / spec.R);
  }
  Eigen::MatrixXd gram = sines * w.asDiagonal() * sines.transpose();
  // Enforce exact symmetry; the quadrature sum is symmetric up to rounding.
  return 0.5 * (gram + gram.transpose());
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& gram) {
  const Eigen::Index n = gram.rows();
  if (n == 0 || gram.cols() != n) throw InvalidArgument("gram matrix must be square and non-empty");
  if (!(gram(0, 0) > 0.0)) throw IllConditionedBasis("gram matrix has non-positive leading entry");

  Eigen::MatrixXd rows = Eigen::MatrixXd::Identity(n, n);
  mgs_sweep(gram, rows, kPivotFloor * gram(0, 0));

  Eigen::MatrixXd check = rows * gram * rows.transpose();
  const double off = (check - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (off > kReorthogonalizeTol) {
    // Second pass restores orthogonality lost to cancellation; the result stays
    // lower triangular because every row only mixes in earlier rows.
    mgs_sweep(gram, rows, kPivotFloor);
  }
  return rows;
}

BasisSet::BasisSet(const ProblemSpec& spec, const QuadratureRule& rule) : spec_(spec) {
  spec_.validate();
  gram_ = gram_matrix(spec_, rule);
  transform_ = orthonormalize(gram_);
}

Eigen::VectorXd BasisSet::sine_coefficients(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != spec_.N) throw InvalidArgument("coefficient vector has wrong length");
  return transform_.transpose() * coeffs;
}

double BasisSet::sine_mode(int k, double r, int order) const {
  const double freq = k * kPi / spec_.R;
  switch (order) {
    case 0:
      return std::sin(freq * r);
    case 1:
      return freq * std::cos(freq * r);
    case 2:
      return -freq * freq * std::sin(freq * r);
    default:
      throw InvalidArgument("derivative order must be 0, 1 or 2");
  }
}

std::shared_ptr<const BasisSet> make_basis(const ProblemSpec& spec, const QuadratureRule& rule) {
  return std::make_shared<const BasisSet>(spec, rule);
}

double eval(const Profile& profile, double r, int order) {
  const BasisSet& basis = *profile.basis;
  if (!(r >= 0.0 && r <= basis.radius())) {
    throw InvalidArgument("radius " + std::to_string(r) + " outside [0, R]");
  }
  if (order < 0 || order > 2) throw InvalidArgument("derivative order must be 0, 1 or 2");
  // sin(k pi) is not exactly zero in floating point; the boundary values are.
  if (order != 1 && (r == 0.0 || r == basis.radius())) return 0.0;
  const Eigen::VectorXd a = basis.sine_coefficients(profile.coeffs);
  double sum = 0.0;
  for (int k = 0; k < basis.size(); ++k) sum += a(k) * basis.sine_mode(k + 1, r, order);
  return sum;
}

Profile project(const std::function<double(double)>& f, std::shared_ptr<const BasisSet> basis,
                const QuadratureRule& rule) {
  const BasisTable table(*basis, rule);
  const Eigen::Index q = table.nodes().size();
  Eigen::VectorXd fw(q);
  for (Eigen::Index i = 0; i < q; ++i) {
    const double r = table.nodes()(i);
    const double value = f(r);
    if (!std::isfinite(value)) {
      throw NumericalDomainError("projected function is not finite at r = " + std::to_string(r));
    }
    fw(i) = 2.0 * kPi * table.weights()(i) * r * value;
  }
  return Profile{table.values() * fw, std::move(basis)};
}

BasisTable::BasisTable(const BasisSet& basis, const QuadratureRule& rule) : rule_(rule) {
  if (std::abs(rule.radius() - basis.radius()) > 1e-14 * basis.radius()) {
    throw InvalidArgument("quadrature rule radius does not match basis radius");
  }
  const int n = basis.size();
  const Eigen::Index q = static_cast<Eigen::Index>(rule.size());
  nodes_ = Eigen::Map<const Eigen::VectorXd>(rule.nodes().data(), q);
  weights_ = Eigen::Map<const Eigen::VectorXd>(rule.weights().data(), q);
  Eigen::MatrixXd s(n, q), c(n, q);
  for (int k = 0; k < n; ++k) {
    const double freq = (k + 1) * kPi / basis.radius();
    for (Eigen::Index i = 0; i < q; ++i) {
      s(k, i) = std::sin(freq * nodes_(i));
      c(k, i) = freq * std::cos(freq * nodes_(i));
    }
  }
  Eigen::VectorXd freq_sq(n);
  for (int k = 0; k < n; ++k) {
    const double freq = (k + 1) * kPi / basis.radius();
    freq_sq(k) = -freq * freq;
  }
  const Eigen::MatrixXd& t = basis.transform();
  values_ = t * s;
  first_ = t * c;
  second_ = t * (freq_sq.asDiagonal() * s);
}

NodalSamples sample(const BasisTable& table, const Eigen::VectorXd& coeffs, bool with_second) {
  if (coeffs.size() != table.values().rows()) {
    throw InvalidArgument("coefficient vector has wrong length");
  }
  NodalSamples out;
  out.u = (table.values().transpose() * coeffs).array();
  out.ur = (table.first().transpose() * coeffs).array();
  if (with_second) out.urr = (table.second().transpose() * coeffs).array();
  return out;
}

}  // namespace vortex
