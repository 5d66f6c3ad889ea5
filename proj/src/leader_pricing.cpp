#include "greenmeta/leader_pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace greenmeta {

namespace {

struct Evaluated {
  double price = 0.0;
  double revenue = -1.0;
  FollowerEquilibriumD eq;
};

Evaluated evaluate(const CostBreakdownD& bd, double p, const FollowerSolverOptions& opt) {
  Evaluated e;
  e.price = p;
  e.eq = nash_iterative(p, bd, opt);
  e.revenue = revenue(p, e.eq.sum_alpha);
  return e;
}

// Strictly better, so that earlier (lower-price) candidates win ties.
bool better(const Evaluated& a, const Evaluated& b) {
  if (a.revenue != b.revenue) return a.revenue > b.revenue;
  return a.price < b.price;
}

bool has_clamped(const Eigen::VectorXd& alphas) {
  return (alphas.array() <= 0.0).any() || (alphas.array() >= 1.0).any();
}

Evaluated golden_section(const CostBreakdownD& bd, double lo, double hi, double tol,
                         const FollowerSolverOptions& opt) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  Evaluated x1 = evaluate(bd, b - inv_phi * (b - a), opt);
  Evaluated x2 = evaluate(bd, a + inv_phi * (b - a), opt);
  while (b - a > tol) {
    if (x1.revenue >= x2.revenue) {
      b = x2.price;
      x2 = std::move(x1);
      x1 = evaluate(bd, b - inv_phi * (b - a), opt);
    } else {
      a = x1.price;
      x1 = std::move(x2);
      x2 = evaluate(bd, a + inv_phi * (b - a), opt);
    }
  }
  return better(x2, x1) ? x2 : x1;
}

void check_bounds(const PriceBounds& b) {
  if (!(std::isfinite(b.p_min) && std::isfinite(b.p_max) && b.p_min >= 0.0 &&
        b.p_min <= b.p_max)) {
    throw ValidationError({"price_bounds must satisfy 0 <= p_min <= p_max"});
  }
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::InteriorClosedForm:
      return "interior-closed-form";
    case Regime::BoundaryClamped:
      return "boundary-clamped";
    case Regime::BoundConstrained:
      return "bound-constrained";
  }
  return "unknown";
}

Regime regime_from_string(std::string_view s) {
  for (auto r : {Regime::InteriorClosedForm, Regime::BoundaryClamped, Regime::BoundConstrained}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown regime '" + std::string(s) + "'");
}

StackelbergSolution optimal_price_search(const CostBreakdownD& bd, const PriceBounds& bounds,
                                         const SearchOptions& opt) {
  check_bounds(bounds);
  if (!(opt.grid_step > 0.0)) throw std::invalid_argument("grid_step must be > 0");
  if (!(opt.refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be > 0");

  const double lo = bounds.p_min, hi = bounds.p_max;
  const auto steps = static_cast<long>(std::floor((hi - lo) / opt.grid_step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps) + 2);
  for (long k = 0; k <= steps; ++k) grid.push_back(lo + static_cast<double>(k) * opt.grid_step);
  if (grid.back() < hi) grid.push_back(hi);

  std::size_t best_k = 0;
  Evaluated best;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Evaluated e = evaluate(bd, grid[k], opt.follower);
    if (k == 0 || better(e, best)) {
      best = std::move(e);
      best_k = k;
    }
  }

  if (grid.size() > 1) {
    const double left = grid[best_k == 0 ? 0 : best_k - 1];
    const double right = grid[std::min(best_k + 1, grid.size() - 1)];
    Evaluated refined = golden_section(bd, left, right, opt.refine_tol, opt.follower);
    if (better(refined, best)) best = std::move(refined);
  }

  StackelbergSolution sol;
  sol.price_cents = best.price;
  sol.revenue_cents = best.revenue;
  sol.equilibrium = std::move(best.eq);
  sol.demand = demand_coefficients(bd);
  sol.regime =
      has_clamped(sol.equilibrium.alphas) ? Regime::BoundaryClamped : Regime::BoundConstrained;
  return sol;
}

StackelbergSolution optimal_price_search(const Scenario& s, const SearchOptions& opt) {
  return optimal_price_search(cost_breakdown(s), s.price_bounds, opt);
}

StackelbergSolution solve_stackelberg(const CostBreakdownD& bd, const PriceBounds& bounds,
                                      const SearchOptions& opt) {
  check_bounds(bounds);
  const auto demand = demand_coefficients(bd);
  StackelbergSolution searched = optimal_price_search(bd, bounds, opt);

  const double p = demand.phi / (2.0 * demand.theta);
  if (demand.theta > 0.0 && p >= bounds.p_min && p <= bounds.p_max) {
    try {
      auto eq = nash_closed_form(p, bd);
      const double rev = revenue(p, eq.sum_alpha);
      // Revenue need not be globally concave once some users clamp, so the
      // closed form only wins if no searched price beats it.
      if (rev >= searched.revenue_cents - 1e-8 * std::max(1.0, std::abs(rev))) {
        StackelbergSolution sol;
        sol.price_cents = p;
        sol.revenue_cents = rev;
        sol.equilibrium = std::move(eq);
        sol.demand = demand;
        sol.regime = Regime::InteriorClosedForm;
        return sol;
      }
    } catch (const NotInteriorError&) {
      // fall through to the search result
    }
  }
  return searched;
}

StackelbergSolution solve_stackelberg(const Scenario& s, const SearchOptions& opt) {
  return solve_stackelberg(cost_breakdown(s), s.price_bounds, opt);
}

}  // namespace greenmeta
