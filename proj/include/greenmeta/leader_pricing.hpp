#pragma once

// Leader stage: the MSP picks one price for everyone, anticipating the
// follower equilibrium. In the interior regime aggregate demand is linear,
// sum(alpha) = phi - theta p, so revenue p (phi - theta p) is a concave
// quadratic maximized at phi / (2 theta). Outside that regime some alphas sit
// at 0 or 1 and revenue is only piecewise quadratic; a grid search with
// golden-section refinement covers that case.

#include "greenmeta/cost_model.hpp"
#include "greenmeta/follower_game.hpp"
#include "greenmeta/scenario.hpp"

#include <string_view>

namespace greenmeta {

template <typename Scalar>
struct DemandCoefficients {
  Scalar phi = Scalar(0);
  Scalar theta = Scalar(0);

  Scalar demand(const Scalar& p) const { return phi - theta * p; }
};

using DemandCoefficientsD = DemandCoefficients<double>;

template <typename Scalar>
DemandCoefficients<Scalar> demand_coefficients(const CostBreakdown<Scalar>& bd) {
  for (Eigen::Index i = 0; i < bd.size(); ++i) {
    if (!(bd.b(i) > Scalar(0))) {
      throw DegenerateError("b_cents[" + std::to_string(i) + "] must be > 0");
    }
  }
  const Scalar denom = Scalar(bd.size() + 1);
  DemandCoefficients<Scalar> d;
  d.phi = bd.scaled_surplus().sum() / denom;
  d.theta = bd.money_weight * bd.b.cwiseInverse().sum() / denom;
  return d;
}

template <typename Scalar>
Scalar revenue(const Scalar& p, const Scalar& sum_alpha) {
  return p * sum_alpha;
}

template <typename Scalar>
Scalar optimal_price_closed_form(const DemandCoefficients<Scalar>& d, const PriceBounds& b) {
  if (!(d.theta > Scalar(0))) throw DegenerateError("demand theta must be > 0");
  const Scalar unconstrained = d.phi / (Scalar(2) * d.theta);
  const Scalar lo(b.p_min), hi(b.p_max);
  if (unconstrained < lo) return lo;
  if (unconstrained > hi) return hi;
  return unconstrained;
}

enum class Regime { InteriorClosedForm, BoundaryClamped, BoundConstrained };

std::string_view to_string(Regime r);
Regime regime_from_string(std::string_view s);

struct StackelbergSolution {
  double price_cents = 0.0;
  FollowerEquilibriumD equilibrium;
  double revenue_cents = 0.0;
  DemandCoefficientsD demand;
  Regime regime = Regime::BoundaryClamped;
};

struct SearchOptions {
  double grid_step = 1.0;
  double refine_tol = 1e-6;
  FollowerSolverOptions follower;
};

// Grid over [p_min, p_max] (both ends included), then golden-section
// refinement inside the bracket around the best grid point. Ties go to the
// lower price. ConvergenceError from the follower solver propagates and names
// the offending price.
StackelbergSolution optimal_price_search(const CostBreakdownD& bd, const PriceBounds& bounds,
                                         const SearchOptions& opt = {});
StackelbergSolution optimal_price_search(const Scenario& s, const SearchOptions& opt = {});

// Backward induction: closed form when it is interior, feasible and not
// beaten by the search; otherwise the search result.
StackelbergSolution solve_stackelberg(const CostBreakdownD& bd, const PriceBounds& bounds,
                                      const SearchOptions& opt = {});
StackelbergSolution solve_stackelberg(const Scenario& s, const SearchOptions& opt = {});

}  // namespace greenmeta
