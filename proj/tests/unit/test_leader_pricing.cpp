#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "greenmeta/leader_pricing.hpp"
#include "support/fixtures.hpp"
#include "support/rational.hpp"

#include <cmath>
#include <random>

using namespace greenmeta;
using greenmeta::testing::Rational;

namespace {

// Best revenue on a fine grid, with followers solved by the bisection oracle.
std::pair<double, double> audit_best(const CostBreakdownD& bd, const PriceBounds& b, double step) {
  double best_rev = -1.0, best_p = b.p_min;
  const auto n = static_cast<long>(std::floor((b.p_max - b.p_min) / step + 1e-9));
  for (long k = 0; k <= n; ++k) {
    const double p = b.p_min + static_cast<double>(k) * step;
    const double rev = p * testing::bisection_equilibrium(bd, p).sum();
    if (rev > best_rev) {
      best_rev = rev;
      best_p = p;
    }
  }
  return {best_p, best_rev};
}

CostBreakdownD prohibitive(const Scenario& s) {
  auto bd = cost_breakdown(s);
  // shift C_loc so that C - A < mu_M p_min for everyone
  bd.c_loc = bd.a + Eigen::VectorXd::Constant(bd.size(), 0.5 * s.price_bounds.p_min);
  return bd;
}

}  // namespace

TEST_CASE("demand coefficients of the symmetric pair") {
  VectorX<Rational> c(2), a(2), b(2);
  c << Rational(10), Rational(10);
  a << Rational(0), Rational(0);
  b << Rational(10), Rational(10);
  const auto d = demand_coefficients(make_breakdown<Rational>(c, a, b, Rational(1)));
  CHECK(d.phi == Rational(2, 3));
  CHECK(d.theta == Rational(1, 15));
  CHECK(d.demand(Rational(5)) == Rational(1, 3));
  CHECK(nash_closed_form(5.0, testing::symmetric_pair()).sum_alpha == doctest::Approx(1.0 / 3));
}

TEST_CASE("demand coefficients of a single follower") {
  const auto bd = make_breakdown<double>(Eigen::VectorXd::Constant(1, 10.0),
                                         Eigen::VectorXd::Zero(1), Eigen::VectorXd::Constant(1, 10.0));
  const auto d = demand_coefficients(bd);
  CHECK(d.phi == doctest::Approx(0.5));
  CHECK(d.theta == doctest::Approx(0.05));
}

TEST_CASE("interior demand lies on phi - theta p") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto inst = testing::random_interior_instance(rng);
    const auto d = demand_coefficients(inst.bd);
    for (double dp : {-0.5, 0.5}) {
      const double p = inst.price + dp;
      try {
        const auto eq = nash_closed_form(p, inst.bd);
        CHECK(std::abs(eq.sum_alpha - d.demand(p)) <= 1e-9 * std::max(1.0, eq.sum_alpha));
      } catch (const NotInteriorError&) {
      }
    }
  }
}

TEST_CASE("revenue reference values") {
  CHECK(revenue(5.0, 1.0 / 3) == doctest::Approx(5.0 / 3));
  CHECK(revenue(0.0, 6.5) == 0.0);
  CHECK(revenue(140.0, 8.0) == 1120.0);
}

TEST_CASE("optimal_price_closed_form clamps to the bounds") {
  DemandCoefficients<Rational> d{Rational(2, 3), Rational(1, 15)};
  CHECK(optimal_price_closed_form(d, PriceBounds{0, 10}) == Rational(5));
  CHECK(optimal_price_closed_form(d, PriceBounds{6, 10}) == Rational(6));
  CHECK(optimal_price_closed_form(d, PriceBounds{140, 280}) == Rational(140));
  CHECK_THROWS_AS(optimal_price_closed_form(DemandCoefficientsD{1.0, 0.0}, PriceBounds{0, 1}),
                  DegenerateError);
}

TEST_CASE("price search finds the interior optimum of the toy game") {
  const auto sol = optimal_price_search(testing::symmetric_pair(), PriceBounds{0, 10},
                                        SearchOptions{0.1, 1e-6, {}});
  CHECK(std::abs(sol.price_cents - 5.0) <= 1e-4);
  CHECK(sol.revenue_cents == doctest::Approx(5.0 / 3).epsilon(1e-9));
}

TEST_CASE("price search on a saturated game picks p_max") {
  const auto bd = make_breakdown<double>(Eigen::Vector3d(1000, 1000, 1000), Eigen::Vector3d(0, 0, 0),
                                         Eigen::Vector3d(1, 1, 1));
  const auto sol = optimal_price_search(bd, PriceBounds{140, 280});
  CHECK(sol.price_cents == 280.0);
  CHECK(sol.equilibrium.sum_alpha == 3.0);
  CHECK(sol.revenue_cents == 840.0);
  CHECK(sol.regime == Regime::BoundaryClamped);
}

TEST_CASE("price search returns p_min when the unconstrained optimum is below it") {
  const auto bd = testing::symmetric_pair();
  const PriceBounds bounds{6, 10};
  const auto sol = optimal_price_search(bd, bounds);
  const auto [audit_p, audit_rev] = audit_best(bd, bounds, 0.01);
  CHECK(audit_p == 6.0);
  CHECK(sol.price_cents == 6.0);
  CHECK(sol.revenue_cents == doctest::Approx(audit_rev).epsilon(1e-9));
  CHECK(sol.regime == Regime::BoundConstrained);
}

TEST_CASE("search propagates follower non-convergence") {
  SearchOptions opt;
  opt.follower.max_sweeps = 1;
  CHECK_THROWS_AS(optimal_price_search(testing::symmetric_pair(), PriceBounds{0, 10}, opt),
                  ConvergenceError);
}

TEST_CASE("solve_stackelberg on the toy game is the closed form") {
  const auto sol = solve_stackelberg(testing::symmetric_pair(), PriceBounds{0, 10});
  CHECK(sol.price_cents == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(sol.equilibrium.alphas(0) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(sol.equilibrium.alphas(1) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(sol.revenue_cents == doctest::Approx(5.0 / 3).epsilon(1e-14));
  CHECK(sol.regime == Regime::InteriorClosedForm);
  CHECK(sol.demand.phi == doctest::Approx(2.0 / 3));
  CHECK(sol.demand.theta == doctest::Approx(1.0 / 15));

  const auto from_scenario = solve_stackelberg(testing::toy_scenario());
  CHECK(from_scenario.price_cents == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(from_scenario.revenue_cents == doctest::Approx(5.0 / 3).epsilon(1e-9));
}

TEST_CASE("prohibitive prices give zero demand") {
  const auto s = testing::paper_scenario();
  const auto sol = solve_stackelberg(prohibitive(s), s.price_bounds);
  CHECK(sol.equilibrium.alphas.isZero(0.0));
  CHECK(sol.revenue_cents == 0.0);
  CHECK(sol.regime == Regime::BoundaryClamped);
  CHECK(sol.price_cents == s.price_bounds.p_min);
}

TEST_CASE("interior revenue is exactly quadratic") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    const auto inst = testing::random_interior_instance(rng);
    const double p0 = inst.price - 0.3, p1 = inst.price, p2 = inst.price + 0.3;
    double r[3];
    const double ps[3] = {p0, p1, p2};
    bool interior = true;
    for (int j = 0; j < 3; ++j) {
      try {
        r[j] = revenue(ps[j], nash_closed_form(ps[j], inst.bd).sum_alpha);
      } catch (const NotInteriorError&) {
        interior = false;
      }
    }
    if (!interior) continue;
    const auto d = demand_coefficients(inst.bd);
    // Lagrange interpolation through the three points, evaluated off-grid
    const double q = inst.price + 0.17;
    const double l0 = (q - p1) * (q - p2) / ((p0 - p1) * (p0 - p2));
    const double l1 = (q - p0) * (q - p2) / ((p1 - p0) * (p1 - p2));
    const double l2 = (q - p0) * (q - p1) / ((p2 - p0) * (p2 - p1));
    const double interp = l0 * r[0] + l1 * r[1] + l2 * r[2];
    const double exact = q * (d.phi - d.theta * q);
    CHECK(std::abs(interp - exact) <= 1e-8 * std::abs(exact));
  }
}

TEST_CASE("solutions on generated scenarios are certified") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto s = testing::paper_scenario(seed);
    const auto bd = cost_breakdown(s);
    const auto sol = solve_stackelberg(s);
    CHECK(sol.price_cents >= s.price_bounds.p_min);
    CHECK(sol.price_cents <= s.price_bounds.p_max);
    CHECK(std::abs(sol.revenue_cents - sol.price_cents * sol.equilibrium.sum_alpha) <=
          1e-9 * std::max(1.0, sol.revenue_cents));
    CHECK(verify_nash(sol.equilibrium, sol.price_cents, bd, 1e-3) <=
          bd.b.maxCoeff() * 1e-6 + 1e-8);

    const auto [audit_p, audit_rev] = audit_best(bd, s.price_bounds, 0.01);
    CHECK(audit_rev <= sol.revenue_cents * (1.0 + 1e-6));

    // leader-follower consistency
    const auto again = nash_iterative(sol.price_cents, bd);
    CHECK((again.alphas - sol.equilibrium.alphas).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("narrowing the price bounds never raises revenue") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto s = testing::paper_scenario(seed);
    const auto bd = cost_breakdown(s);
    double prev = std::numeric_limits<double>::infinity();
    for (const PriceBounds b : {PriceBounds{0, 600}, PriceBounds{100, 400}, PriceBounds{140, 280},
                                PriceBounds{180, 240}, PriceBounds{200, 210}}) {
      const double rev = solve_stackelberg(bd, b).revenue_cents;
      CHECK(rev <= prev * (1.0 + 1e-9));
      prev = rev;
    }
  }
}

TEST_CASE("regime names round-trip") {
  for (auto r : {Regime::InteriorClosedForm, Regime::BoundaryClamped, Regime::BoundConstrained}) {
    CHECK(regime_from_string(to_string(r)) == r);
  }
  CHECK_THROWS_AS(regime_from_string("nope"), std::invalid_argument);
}
