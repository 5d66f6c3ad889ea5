#include "greenmeta/cost_model.hpp"

namespace greenmeta {

LocalProfile local_profile(const UserProfile& u, const CostWeights& w) {
  LocalProfile lp;
  lp.time_s = u.workload_cycles / u.local_freq_hz;
  lp.energy_j = u.capacitance * u.local_freq_hz * u.local_freq_hz * u.workload_cycles;
  lp.cost_cents = u.time_penalty_cents_per_s * lp.time_s + w.energy_weight_cents_per_j * lp.energy_j;
  return lp;
}

TransferProfile transfer_profile(const UserProfile& u, const Scenario& s) {
  const auto& sh = s.sharing;
  // shared pieces move at the slowest user's rate
  const double r_min = min_data_rate(s);
  TransferProfile tp;
  tp.up_time_s = (1.0 - sh.rho_in) * u.input_bits / u.data_rate_bps;
  tp.wait_s = sh.rho_in * u.input_bits / r_min;
  tp.up_energy_j = u.tx_power_w * tp.up_time_s;
  tp.down_time_s =
      sh.rho_out * u.output_bits / r_min + (1.0 - sh.rho_out) * u.output_bits / u.data_rate_bps;
  tp.down_energy_j = u.rx_power_w * tp.down_time_s;
  return tp;
}

OffloadCoefficients offload_coefficients(const UserProfile& u, const Scenario& s) {
  const double f_srv = s.server.total_freq_hz;
  if (!(f_srv > 0.0)) throw ValidationError({"server.total_freq_hz must be finite and > 0"});
  const auto tp = transfer_profile(u, s);
  const double lambda = u.time_penalty_cents_per_s;
  const double rho_w = s.sharing.rho_w;
  const double shared_compute_s = rho_w * u.workload_cycles / f_srv;

  OffloadCoefficients oc;
  oc.a_cents = lambda * (tp.wait_s + tp.up_time_s + shared_compute_s + tp.down_time_s) +
               s.weights.energy_weight_cents_per_j * (tp.up_energy_j + tp.down_energy_j);
  oc.b_cents = lambda * (1.0 - rho_w) * u.workload_cycles / f_srv;
  return oc;
}

CostBreakdownD cost_breakdown(const Scenario& s) {
  require_valid(s);
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::VectorXd c(n), a(n), b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& u = s.users[static_cast<std::size_t>(i)];
    c(i) = local_profile(u, s.weights).cost_cents;
    const auto oc = offload_coefficients(u, s);
    a(i) = oc.a_cents;
    b(i) = oc.b_cents;
  }
  return make_breakdown<double>(std::move(c), std::move(a), std::move(b), s.weights.money_weight);
}

}  // namespace greenmeta
