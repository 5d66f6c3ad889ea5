#pragma once

// Follower stage of the pricing game: for a fixed uniform price p, every user
// picks an offloading probability alpha_i in [0,1] minimizing
//
//   J_i = alpha_i (A_i + mu_M p) + B_i alpha_i sum_j alpha_j + (1 - alpha_i) C_loc,i
//
// J_i is a strictly convex quadratic in alpha_i (second derivative 2 B_i), so
// the best response is the clamped stationary point. All routines are
// templated on the scalar so tests can run them in exact arithmetic.

#include "greenmeta/cost_model.hpp"
#include "greenmeta/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace greenmeta {

template <typename Scalar>
struct FollowerEquilibrium {
  VectorX<Scalar> alphas;
  Scalar sum_alpha = Scalar(0);
  bool interior = false;
  int iterations = 0;
  double residual = 0.0;
};

using FollowerEquilibriumD = FollowerEquilibrium<double>;

enum class SweepOrder { Forward, Reverse };

struct FollowerSolverOptions {
  double tol = 1e-10;
  int max_sweeps = 100000;
  SweepOrder order = SweepOrder::Forward;
};

namespace detail {

template <typename Scalar>
Scalar clamp01(const Scalar& x) {
  if (x < Scalar(0)) return Scalar(0);
  if (x > Scalar(1)) return Scalar(1);
  return x;
}

template <typename Scalar>
void check_index(const CostBreakdown<Scalar>& bd, Eigen::Index i) {
  if (i < 0 || i >= bd.size()) {
    throw std::out_of_range("user index " + std::to_string(i) + " out of range [0, " +
                            std::to_string(bd.size()) + ")");
  }
}

template <typename Scalar>
bool all_open_unit(const VectorX<Scalar>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v(i) > Scalar(0) && v(i) < Scalar(1))) return false;
  }
  return true;
}

// J_i with user i playing x and the others summing to sum_others.
template <typename Scalar>
Scalar cost_at(const CostBreakdown<Scalar>& bd, Eigen::Index i, const Scalar& x,
               const Scalar& sum_others, const Scalar& p) {
  return x * (bd.a(i) + bd.money_weight * p) + bd.b(i) * x * (sum_others + x) +
         (Scalar(1) - x) * bd.c_loc(i);
}

}  // namespace detail

template <typename Scalar>
Scalar expected_cost(Eigen::Index i, const VectorX<Scalar>& alphas, const Scalar& p,
                     const CostBreakdown<Scalar>& bd) {
  detail::check_index(bd, i);
  if (alphas.size() != bd.size()) throw std::invalid_argument("alphas size mismatch");
  const Scalar total = alphas.sum();
  return detail::cost_at(bd, i, alphas(i), Scalar(total - alphas(i)), p);
}

// Unique minimizer of J_i over [0,1] given the other users' total.
template <typename Scalar>
Scalar best_response(Eigen::Index i, const Scalar& sum_others, const Scalar& p,
                     const CostBreakdown<Scalar>& bd) {
  detail::check_index(bd, i);
  if (!(bd.b(i) > Scalar(0))) {
    throw DegenerateError("b_cents[" + std::to_string(i) + "] must be > 0");
  }
  const Scalar raw =
      (bd.c_loc(i) - bd.a(i) - bd.money_weight * p - bd.b(i) * sum_others) / (Scalar(2) * bd.b(i));
  return detail::clamp01(raw);
}

// Summing the N stationarity conditions 2 a_i + S - a_i = d_i with
// d_i = (C_i - A_i - mu_M p) / B_i gives S = sum(d) / (N + 1), then
// a_i = d_i - S. Throws NotInteriorError unless every a_i is in (0,1).
template <typename Scalar>
FollowerEquilibrium<Scalar> nash_closed_form(const Scalar& p, const CostBreakdown<Scalar>& bd) {
  const auto n = bd.size();
  const VectorX<Scalar> d =
      (bd.c_loc - bd.a - VectorX<Scalar>::Constant(n, bd.money_weight * p)).cwiseQuotient(bd.b);
  const Scalar sum = d.sum() / Scalar(n + 1);
  VectorX<Scalar> alphas = d - VectorX<Scalar>::Constant(n, sum);

  if (!detail::all_open_unit(alphas)) {
    std::ostringstream msg;
    msg << "closed-form follower equilibrium is not interior at price " << static_cast<double>(p);
    throw NotInteriorError(msg.str(), alphas.template cast<double>(), static_cast<double>(sum));
  }
  FollowerEquilibrium<Scalar> eq;
  eq.alphas = std::move(alphas);
  eq.sum_alpha = eq.alphas.sum();
  eq.interior = true;
  return eq;
}

// Projected Gauss-Seidel best-response sweeps from the all-zero profile.
// Converges because the stacked stationarity system, scaled by 1/B_i, is
// I + 1 1^T, which is symmetric positive definite.
template <typename Scalar>
FollowerEquilibrium<Scalar> nash_iterative(const Scalar& p, const CostBreakdown<Scalar>& bd,
                                           const FollowerSolverOptions& opt = {}) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (opt.max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");

  const auto n = bd.size();
  VectorX<Scalar> alphas = VectorX<Scalar>::Zero(n);
  Scalar total = Scalar(0);
  double residual = 0.0;

  for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    residual = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index i = opt.order == SweepOrder::Forward ? k : n - 1 - k;
      const Scalar next = best_response(i, Scalar(total - alphas(i)), p, bd);
      const double change = std::abs(static_cast<double>(next - alphas(i)));
      residual = std::max(residual, change);
      total += next - alphas(i);
      alphas(i) = next;
    }
    // recompute to keep round-off in the running total from accumulating
    total = alphas.sum();
    if (residual <= opt.tol) {
      FollowerEquilibrium<Scalar> eq;
      eq.alphas = std::move(alphas);
      eq.sum_alpha = total;
      eq.interior = detail::all_open_unit(eq.alphas);
      eq.iterations = sweep;
      eq.residual = residual;
      return eq;
    }
  }
  std::ostringstream msg;
  msg << "follower best-response iteration did not converge at price " << static_cast<double>(p)
      << " after " << opt.max_sweeps << " sweeps (residual " << residual << ")";
  throw ConvergenceError(msg.str(), alphas.template cast<double>(), residual,
                         static_cast<double>(p));
}

// Largest unilateral improvement any user can get by moving to a point of
// the grid {0, step, 2 step, ..., 1}. At an exact equilibrium each alpha_i
// already minimizes J_i, so the result is <= 0 up to round-off; an iterate
// that is off by delta in coordinate i can show a gain of about B_i delta^2.
template <typename Scalar>
Scalar verify_nash(const FollowerEquilibrium<Scalar>& eq, const Scalar& p,
                   const CostBreakdown<Scalar>& bd, double grid_step) {
  if (!(grid_step > 0.0 && grid_step < 1.0)) {
    throw std::invalid_argument("grid_step must be in (0, 1)");
  }
  const auto& a = eq.alphas;
  const Scalar total = a.sum();
  const long points = static_cast<long>(std::floor(1.0 / grid_step + 1e-9));
  bool first = true;
  Scalar best_gain = Scalar(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Scalar others = total - a(i);
    const Scalar current = detail::cost_at(bd, i, a(i), others, p);
    for (long k = 0; k <= points + 1; ++k) {
      // last point is exactly 1 even when the step does not divide it
      const Scalar x = k > points ? Scalar(1) : Scalar(static_cast<double>(k) * grid_step);
      const Scalar gain = current - detail::cost_at(bd, i, x, others, p);
      if (first || gain > best_gain) {
        best_gain = gain;
        first = false;
      }
    }
  }
  return best_gain;
}

}  // namespace greenmeta
