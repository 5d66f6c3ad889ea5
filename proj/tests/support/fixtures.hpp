#pragma once

// Shared test instances and independent oracles. Nothing here calls the
// follower solvers under test.

#include "greenmeta/cost_model.hpp"
#include "greenmeta/scenario.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <random>

namespace greenmeta::testing {

// Two identical users with C - A = 10, B = 10, mu_M = 1.
inline CostBreakdownD symmetric_pair() {
  return make_breakdown<double>(Eigen::Vector2d(10.0, 10.0), Eigen::Vector2d(0.0, 0.0),
                                Eigen::Vector2d(10.0, 10.0), 1.0);
}

// Scenario whose cost breakdown is C = 100, A = 90, B = 10 for both users:
// lambda = 100, W = f = 1e9, F = 1e10, no sharing, no energy weight, and
// (D_in + D_out) / r = 0.9 s.
inline Scenario toy_scenario() {
  Scenario s;
  for (int i = 0; i < 2; ++i) {
    UserProfile u;
    u.id = i;
    u.input_bits = 6e6;
    u.workload_cycles = 1e9;
    u.output_bits = 3e6;
    u.local_freq_hz = 1e9;
    u.data_rate_bps = 1e7;
    u.tx_power_w = 0.5;
    u.rx_power_w = 0.1;
    u.capacitance = 5e-27;
    u.time_penalty_cents_per_s = 100.0;
    s.users.push_back(u);
  }
  s.server = {1e10, 1e-27};
  s.sharing = {0.0, 0.0, 0.0};
  s.weights = {0.0, 1.0};
  s.price_bounds = {0.0, 10.0};
  s.seed = 7;
  return s;
}

inline Scenario paper_scenario(std::uint64_t seed = calibration::kDefaultSeed) {
  return generate_scenario(paper_default_spec(), seed);
}

// Follower equilibrium by a route independent of best-response iteration.
// With d_i = (C_i - A_i - mu_M p) / B_i the fixed point is
// alpha_i = clamp(d_i - S, 0, 1) where S = sum(alpha) solves
// S = sum_i clamp(d_i - S, 0, 1); the right side minus S is strictly
// decreasing, so bisection on [0, N] finds the unique root.
inline Eigen::VectorXd bisection_equilibrium(const CostBreakdownD& bd, double p) {
  const Eigen::VectorXd d =
      (bd.c_loc - bd.a - Eigen::VectorXd::Constant(bd.size(), bd.money_weight * p))
          .cwiseQuotient(bd.b);
  auto excess = [&](double s) {
    return (d.array() - s).max(0.0).min(1.0).sum() - s;
  };
  double lo = 0.0, hi = static_cast<double>(bd.size());
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  return (d.array() - s).max(0.0).min(1.0).matrix();
}

// Interior instance built backwards: pick interior alphas at a reference
// price and solve for C - A so that they are the equilibrium there.
struct InteriorInstance {
  CostBreakdownD bd;
  double price = 0.0;
  Eigen::VectorXd alphas;
};

inline InteriorInstance random_interior_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_dist(2, 8);
  std::uniform_real_distribution<double> b_dist(5.0, 50.0);
  std::uniform_real_distribution<double> a_dist(0.3, 0.7);
  std::uniform_real_distribution<double> p_dist(20.0, 200.0);
  std::uniform_real_distribution<double> base_dist(50.0, 500.0);
  std::uniform_real_distribution<double> mu_dist(0.5, 2.0);

  const int n = n_dist(rng);
  InteriorInstance inst;
  inst.price = p_dist(rng);
  const double mu = mu_dist(rng);
  Eigen::VectorXd b(n), a(n), alphas(n);
  for (int i = 0; i < n; ++i) {
    b(i) = b_dist(rng);
    alphas(i) = a_dist(rng);
    a(i) = base_dist(rng);
  }
  const double s = alphas.sum();
  Eigen::VectorXd c = a + (b.array() * (alphas.array() + s)).matrix() +
                      Eigen::VectorXd::Constant(n, mu * inst.price);
  inst.bd = make_breakdown<double>(c, a, b, mu);
  inst.alphas = alphas;
  return inst;
}

}  // namespace greenmeta::testing
