#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vortex/basis.hpp"
#include "vortex/functionals.hpp"

using namespace vortex;

namespace {

ProblemSpec make_spec(double R, int N, int m = 1, double P0 = 200.0) {
  return ProblemSpec{R, m, 1.0, P0, N};
}

double max_orthonormality_error(const BasisSet& basis, const QuadratureRule& rule) {
  const BasisTable table(basis, rule);
  const Eigen::VectorXd w =
      (2.0 * oracle::kPi * table.weights().array() * table.nodes().array()).matrix();
  const Eigen::MatrixXd inner = table.values() * w.asDiagonal() * table.values().transpose();
  return (inner - Eigen::MatrixXd::Identity(basis.size(), basis.size())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("gram matrix matches the closed form") {
  const auto spec = make_spec(20.0, 20);
  const auto rule = default_rule(spec.R, spec.N);
  const Eigen::MatrixXd g = gram_matrix(spec, rule);
  CHECK(g(0, 0) == doctest::Approx(200.0 * oracle::kPi).epsilon(1e-13));
  CHECK(g(0, 1) == doctest::Approx(-16.0 * 400.0 / (9.0 * oracle::kPi)).epsilon(1e-13));
  CHECK(std::abs(g(0, 2)) < 1e-10);
  const Eigen::MatrixXd exact = oracle::gram_matrix(spec.R, spec.N);
  CHECK((g - exact).cwiseAbs().maxCoeff() <= 1e-11 * exact.cwiseAbs().maxCoeff());
  CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("orthonormalize small cases") {
  Eigen::MatrixXd g1(1, 1);
  g1(0, 0) = 200.0 * oracle::kPi;
  CHECK(orthonormalize(g1)(0, 0) == doctest::Approx(1.0 / std::sqrt(200.0 * oracle::kPi)));

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(5, 5);
  CHECK((orthonormalize(id) - id).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXd singular(2, 2);
  singular << 1.0, 1.0, 1.0, 1.0;
  CHECK_THROWS_AS(orthonormalize(singular), IllConditionedBasis);
}

TEST_CASE("transform is lower triangular with positive diagonal") {
  for (int N : {1, 5, 20, 40}) {
    const auto spec = make_spec(20.0, N);
    const auto rule = default_rule(spec.R, N);
    const Eigen::MatrixXd t = orthonormalize(gram_matrix(spec, rule));
    for (int i = 0; i < N; ++i) {
      CHECK(t(i, i) > 0.0);
      for (int j = i + 1; j < N; ++j) CHECK(t(i, j) == 0.0);
    }
  }
}

TEST_CASE("orthonormality for N <= 40 and R in [1, 100]") {
  for (double R : {1.0, 7.5, 20.0, 40.0, 100.0}) {
    for (int N : {1, 10, 20, 40}) {
      const auto spec = make_spec(R, N);
      const auto rule = default_rule(R, N);
      const BasisSet basis(spec, rule);
      CHECK(max_orthonormality_error(basis, rule) <= 1e-10);
    }
  }
}

TEST_CASE("evaluation at the boundary and derivative oracles") {
  const auto spec = make_spec(20.0, 20);
  const auto rule = default_rule(spec.R, spec.N);
  const auto basis = make_basis(spec, rule);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Profile p{oracle::random_coefficients(rng, spec.N, spec.P0), basis};
    CHECK(eval(p, 0.0) == 0.0);
    CHECK(eval(p, spec.R) == 0.0);
    const double h = 1e-6 * spec.R;
    for (double r : {0.7, 3.1, 9.9, 15.0, 19.2}) {
      const double d1 = eval(p, r, 1);
      const double fd1 = oracle::central_difference([&](double x) { return eval(p, x); }, r, h);
      CHECK(std::abs(d1 - fd1) <= 1e-6 * std::max(std::abs(d1), 1e-3));
      const double d2 = eval(p, r, 2);
      const double fd2 = oracle::central_difference([&](double x) { return eval(p, x, 1); }, r, h);
      CHECK(std::abs(d2 - fd2) <= 1e-6 * std::max(std::abs(d2), 1e-3));
    }
    // u ~ r near the axis, so u/r stays bounded.
    CHECK(std::isfinite(eval(p, 1e-9) / 1e-9));
  }
  const Profile p{Eigen::VectorXd::Ones(spec.N), basis};
  CHECK_THROWS_AS(eval(p, -1e-9), InvalidArgument);
  CHECK_THROWS_AS(eval(p, spec.R * (1 + 1e-12)), InvalidArgument);
  CHECK_THROWS_AS(eval(p, 1.0, 3), InvalidArgument);
}

TEST_CASE("flux identity") {
  const auto spec = make_spec(20.0, 20);
  const auto rule = default_rule(spec.R, spec.N);
  const auto basis = make_basis(spec, rule);
  Eigen::VectorXd first = Eigen::VectorXd::Zero(spec.N);
  first(0) = std::sqrt(spec.P0);
  CHECK(flux(Profile{first, basis}, rule) == doctest::Approx(spec.P0).epsilon(1e-12));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> scale(0.1, 900.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Profile p{oracle::random_coefficients(rng, spec.N, scale(rng)), basis};
    const double expected = p.coefficient_flux();
    CHECK(std::abs(flux(p, rule) - expected) <= 1e-8 * expected);
  }
}

TEST_CASE("projection") {
  const auto spec = make_spec(20.0, 20);
  const auto rule = default_rule(spec.R, spec.N);
  const auto basis = make_basis(spec, rule);

  Eigen::VectorXd e2 = Eigen::VectorXd::Zero(spec.N);
  e2(1) = 1.0;
  const Profile psi2{e2, basis};
  const Profile back = project([&](double r) { return eval(psi2, r); }, basis, rule);
  CHECK((back.coeffs - e2).cwiseAbs().maxCoeff() <= 1e-12);

  const Profile zero = project([](double) { return 0.0; }, basis, rule);
  CHECK(zero.coeffs.norm() == 0.0);

  const double b = std::sqrt(30.0 * spec.P0 / (oracle::kPi * std::pow(spec.R, 6)));
  const Profile trial = project([&](double r) { return b * r * (spec.R - r); }, basis, rule);
  CHECK(std::abs(trial.coefficient_flux() - spec.P0) <= 0.01 * spec.P0);
}

TEST_CASE("invalid problem specs") {
  CHECK_THROWS_AS((ProblemSpec{0.0, 1, 1.0, 1.0, 20}.validate()), InvalidArgument);
  CHECK_THROWS_AS((ProblemSpec{20.0, 1, 1.0, 0.0, 20}.validate()), InvalidArgument);
  CHECK_THROWS_AS((ProblemSpec{20.0, 1, 0.5, 1.0, 20}.validate()), InvalidArgument);
  CHECK_THROWS_AS((ProblemSpec{20.0, 1, 1.0, 1.0, 0}.validate()), InvalidArgument);
  CHECK_NOTHROW((ProblemSpec{20.0, -3, 1.0, 1.0, 1}.validate()));
  const auto rule = default_rule(10.0, 20);
  CHECK_THROWS_AS(gram_matrix(make_spec(20.0, 20), rule), InvalidArgument);
}
