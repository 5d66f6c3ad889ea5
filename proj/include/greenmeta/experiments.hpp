#pragma once

// Scheme comparison and price sweeps on a single scenario.

#include "greenmeta/leader_pricing.hpp"
#include "greenmeta/scenario.hpp"

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace greenmeta {

enum class Scheme { ALP, ATO, STACKELBERG };

std::string_view to_string(Scheme s);

struct AssignmentMetrics {
  double total_energy_j = 0.0;
  double avg_cost_cents = 0.0;
  double revenue_cents = 0.0;
};

// Total energy covers user devices (local compute or radio) plus the edge
// server: kappa_srv F^2 rho_w W for the shared workload run once, and
// kappa_srv (F / max(S,1))^2 sum_i alpha_i (1 - rho_w) W for the individual
// workloads, where S = sum(alpha). Server energy is zero when S = 0.
AssignmentMetrics evaluate_assignment(const Scenario& s, const Eigen::VectorXd& alphas, double p);

struct SchemeResult {
  Scheme scheme = Scheme::ALP;
  Eigen::VectorXd alphas;
  double price_cents = 0.0;
  double total_energy_j = 0.0;
  double avg_cost_cents = 0.0;
  double revenue_cents = 0.0;
};

struct ComparisonOptions {
  SearchOptions search;
  // Price charged under ATO. Unset means the solved Stackelberg price.
  std::optional<double> ato_price;
};

SchemeResult run_scheme(const Scenario& s, Scheme scheme, const ComparisonOptions& opt = {});

struct SweepRow {
  double price_cents = 0.0;
  double sum_alpha = 0.0;
  double revenue_cents = 0.0;
  double expected_offloaders = 0.0;
  bool converged = true;
  // InteriorClosedForm when every alpha is strictly inside (0,1), otherwise
  // BoundaryClamped. Meaningless when !converged.
  Regime regime = Regime::BoundaryClamped;
  double max_gain_cents = 0.0;  // verify_nash certificate at 1e-3 grid
  Eigen::VectorXd alphas;
};

// One row per price p_min + k step up to p_max. A follower non-convergence
// flags the row and the sweep continues.
std::vector<SweepRow> price_sweep(const Scenario& s, double step,
                                  const FollowerSolverOptions& follower = {});

struct ComparisonReport {
  std::array<SchemeResult, 3> rows;  // ALP, ATO, STACKELBERG
  Regime stackelberg_regime = Regime::BoundaryClamped;
  std::uint64_t seed = 0;

  // 100 (1 - E_scheme / E_ALP)
  double energy_reduction_pct(Scheme s) const;
  // 100 (1 - cost_STACKELBERG / cost_baseline)
  double cost_reduction_pct(Scheme baseline) const;
  const SchemeResult& row(Scheme s) const;
};

ComparisonReport compare(const Scenario& s, const ComparisonOptions& opt = {});

}  // namespace greenmeta
