#pragma once

// Per-user cost coefficients of the offloading game.
//
// A user that executes locally pays C_loc. A user that offloads pays
//   A + mu_M * p + B * sum(alpha)
// where A collects every alpha-independent term (shared-input wait, own
// upload, shared compute at full F, broadcast and own download, radio energy)
// and B * sum(alpha) is the time cost of the individual workload run at the
// uniform per-offloader frequency F / sum(alpha).

#include "greenmeta/errors.hpp"
#include "greenmeta/scenario.hpp"

#include <Eigen/Core>

#include <string>

namespace greenmeta {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

struct LocalProfile {
  double time_s = 0.0;
  double energy_j = 0.0;
  double cost_cents = 0.0;
};

struct TransferProfile {
  double wait_s = 0.0;
  double up_time_s = 0.0;
  double up_energy_j = 0.0;
  double down_time_s = 0.0;
  double down_energy_j = 0.0;

  double energy_j() const { return up_energy_j + down_energy_j; }
};

struct OffloadCoefficients {
  double a_cents = 0.0;
  double b_cents = 0.0;
};

// The follower game is fully determined by (C_loc, A, B, mu_M).
template <typename Scalar>
struct CostBreakdown {
  VectorX<Scalar> c_loc;
  VectorX<Scalar> a;
  VectorX<Scalar> b;
  Scalar money_weight = Scalar(1);

  Eigen::Index size() const { return c_loc.size(); }

  // (C_loc,i - A_i) / B_i, the price-free offloading surplus in units of B_i.
  VectorX<Scalar> scaled_surplus() const {
    return (c_loc - a).cwiseQuotient(b);
  }
};

using CostBreakdownD = CostBreakdown<double>;

// Assembles a breakdown directly from coefficients, checking sizes and the
// strict-convexity requirement B_i > 0.
template <typename Scalar>
CostBreakdown<Scalar> make_breakdown(VectorX<Scalar> c_loc, VectorX<Scalar> a,
                                     VectorX<Scalar> b, Scalar money_weight = Scalar(1)) {
  if (c_loc.size() == 0 || c_loc.size() != a.size() || a.size() != b.size()) {
    throw ValidationError({"breakdown vectors must be non-empty and equally sized"});
  }
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    if (!(b(i) > Scalar(0))) {
      throw DegenerateError("b_cents[" + std::to_string(i) + "] must be > 0");
    }
  }
  if (money_weight < Scalar(0)) throw ValidationError({"money_weight must be >= 0"});
  return CostBreakdown<Scalar>{std::move(c_loc), std::move(a), std::move(b), money_weight};
}

LocalProfile local_profile(const UserProfile& u, const CostWeights& w);

TransferProfile transfer_profile(const UserProfile& u, const Scenario& s);

OffloadCoefficients offload_coefficients(const UserProfile& u, const Scenario& s);

// Throws ValidationError for invalid scenarios, DegenerateError if any B_i <= 0
// (e.g. rho_w = 1).
CostBreakdownD cost_breakdown(const Scenario& s);

}  // namespace greenmeta
