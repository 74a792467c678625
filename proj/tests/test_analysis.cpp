#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vortex/analysis.hpp"

using namespace vortex;

TEST_CASE("beta threshold") {
  const ProblemSpec spec{20.0, 1, 1.0, 1.0, 20};
  const BetaCheck c = check_beta_bound(-1.1419, spec);
  CHECK(c.threshold == doctest::Approx(-(1.0 + 2.404825 * 2.404825) / 400.0).epsilon(1e-14));
  CHECK(c.threshold == doctest::Approx(-0.016958).epsilon(1e-4));
  CHECK(c.pass);
  CHECK_FALSE(check_beta_bound(0.0, spec).pass);
}

TEST_CASE("peak bound") {
  const ProblemSpec spec{20.0, 1, 1.0, 1.0, 20};
  CHECK(peak_bound_sq(-0.3679, spec) == doctest::Approx(1.7367).epsilon(1e-4));
  CHECK(peak_bound_sq(-1.1419, spec) == doctest::Approx(-0.1223).epsilon(1e-3));
  CHECK_THROWS_AS(peak_bound_sq(-1.0 / 400.0, spec), DegenerateBound);
  ProblemSpec strong = spec;
  strong.alpha = 1e12;
  CHECK(std::abs(peak_bound_sq(-0.3679, strong)) < 1e-11);
}

TEST_CASE("decay applicability") {
  const ProblemSpec spec{20.0, 1, 1.0, 1.0, 20};
  CHECK(decay_applicable(-0.9328, spec));
  CHECK_FALSE(decay_applicable(-1.1419, spec));
  CHECK(decay_applicable(-1.0025 + 1e-9, spec));
  CHECK_FALSE(decay_applicable(-1.0025 - 1e-9, spec));
}

TEST_CASE("exponential tail fit") {
  const double eps0 = 0.25;
  std::vector<double> r, u;
  for (int i = 0; i <= 400; ++i) {
    r.push_back(0.1 * i);
    u.push_back(std::sqrt(3.0) * std::exp(-0.5 * std::sqrt(eps0) * r.back()));
  }
  const TailFit fit = fit_exponential_tail(r, u, 16.0);
  CHECK(std::abs(fit.epsilon0 - eps0) <= 0.01 * eps0);
  CHECK(fit.log_amplitude == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(fit.max_excess <= 1e-9);

  std::vector<double> growing(u.rbegin(), u.rend());
  CHECK(fit_exponential_tail(r, growing, 16.0).epsilon0 == 0.0);

  std::vector<double> short_r(r.begin(), r.begin() + 10), short_u(u.begin(), u.begin() + 10);
  CHECK_THROWS_AS(fit_exponential_tail(short_r, short_u, 0.5), InsufficientTail);
  CHECK_THROWS_AS(fit_exponential_tail(r, std::vector<double>(r.size(), 0.0), 0.0), InsufficientTail);
}

TEST_CASE("Poincare ratio") {
  const ProblemSpec spec{20.0, 1, 1.0, 1.0, 20};
  const auto rule = default_rule(spec.R, spec.N);
  const auto basis = make_basis(spec, rule);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(spec.N);
  e1(0) = 1.0;
  CHECK(check_poincare(Profile{e1, basis}, rule, spec).pass);
  CHECK_THROWS_AS(check_poincare(Profile{Eigen::VectorXd::Zero(spec.N), basis}, rule, spec),
                  UndefinedRatio);

  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Profile p{oracle::random_coefficients(rng, spec.N, 1.0), basis};
    CHECK(check_poincare(p, rule, spec).ratio >= 1.0 - 1e-9);
  }

  // The Bessel mode itself is the equality case.
  const double k = kFirstBesselZero / spec.R;
  const double num = integrate(rule, [&](double r) {
    const double d = k * std::cyl_bessel_j(1.0, k * r);
    return r * d * d;
  });
  const double den = integrate(rule, [&](double r) {
    const double v = std::cyl_bessel_j(0.0, k * r);
    return r * v * v;
  });
  CHECK(spec.R * spec.R / (kFirstBesselZero * kFirstBesselZero) * num / den ==
        doctest::Approx(1.0).epsilon(1e-5));

  const Profile projected =
      project([&](double r) { return std::cyl_bessel_j(0.0, k * r); }, basis, rule);
  CHECK(check_poincare(projected, rule, spec).ratio >= 1.0);
}

TEST_CASE("coupled reduction") {
  {
    const auto out = reduce_coupled(CoupledSpec{2, -2, -0.5, -0.5, true}, 3.0);
    REQUIRE(std::holds_alternative<ReducedProblem>(out));
    CHECK(std::get<ReducedProblem>(out).m == 2);
    CHECK(std::get<ReducedProblem>(out).alpha == 3.0);
    CHECK(std::get<ReducedProblem>(out).beta == -0.5);
  }
  CHECK(std::holds_alternative<CouplingRejection>(reduce_coupled(CoupledSpec{1, 2, -0.5, -0.5, true}, 3.0)));
  CHECK(std::holds_alternative<CouplingRejection>(reduce_coupled(CoupledSpec{1, 1, -0.5, -0.4, true}, 3.0)));
  CHECK(std::holds_alternative<CouplingRejection>(reduce_coupled(CoupledSpec{1, 1, -0.5, -0.5, true}, 1.0)));
  {
    const auto out = reduce_coupled(CoupledSpec{1, 7, -0.8, -0.2, false, false}, 2.0);
    REQUIRE(std::holds_alternative<ReducedProblem>(out));
    CHECK(std::get<ReducedProblem>(out).m == 1);
    CHECK(std::get<ReducedProblem>(out).alpha == 1.0);
    CHECK(std::get<ReducedProblem>(out).beta == -0.8);
  }
  {
    const auto out = reduce_coupled(CoupledSpec{1, -7, -0.8, -0.2, false, true}, 2.0);
    REQUIRE(std::holds_alternative<ReducedProblem>(out));
    CHECK(std::get<ReducedProblem>(out).m == 7);
  }
  CHECK_THROWS_AS(reduce_coupled(CoupledSpec{}, 0.5), InvalidArgument);
}

TEST_CASE("validation of a converged solution") {
  const ProblemSpec spec{20.0, 1, 1.0, 200.0, 20};
  const auto rule = default_rule(spec.R, spec.N);
  const SolveResult r = minimize(spec);
  REQUIRE(r.converged);
  const BoundsReport report = validate_solution(r, spec, rule);
  CHECK(report.beta_ok);
  CHECK(report.peak_ok);
  CHECK(report.max_u_sq > report.peak_bound_sq);
  CHECK(report.decay_applicable);
  REQUIRE(report.epsilon0_fit.has_value());
  CHECK(*report.epsilon0_fit > 0.0);
  CHECK(report.poincare_ok);
  CHECK(report.flux_ok);
  CHECK(report.all_ok());
  const DecayCheck decay = fit_decay(r, spec);
  CHECK(decay.epsilon0_floor == doctest::Approx(2.0 * (r.beta + 1.0 / 400.0 + 1.0)));
}
