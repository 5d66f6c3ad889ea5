#include "greenmeta/scenario.hpp"

#include "greenmeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace greenmeta {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::ostringstream out;
  out << "validation failed";
  for (const auto& s : v) out << "; " << s;
  return out.str();
}

class Checker {
 public:
  void positive(const std::string& path, double x) {
    if (!(std::isfinite(x) && x > 0.0)) add(path + " must be finite and > 0");
  }
  void non_negative(const std::string& path, double x) {
    if (!(std::isfinite(x) && x >= 0.0)) add(path + " must be finite and >= 0");
  }
  void unit_interval(const std::string& path, double x) {
    if (!(x >= 0.0 && x <= 1.0)) add(path + " not in [0,1]");
  }
  void range(const std::string& path, const Range& r) {
    if (!(std::isfinite(r.low) && std::isfinite(r.high))) {
      add(path + " has non-finite bounds");
    } else if (r.low > r.high) {
      add(path + " has low > high");
    }
  }
  void add(std::string msg) { out_.push_back(std::move(msg)); }

  std::vector<std::string> take() { return std::move(out_); }

 private:
  std::vector<std::string> out_;
};

void check_common(Checker& c, const ServerProfile& server, const CostWeights& w,
                  const PriceBounds& b) {
  c.positive("server.total_freq_hz", server.total_freq_hz);
  c.non_negative("server.server_capacitance", server.server_capacitance);
  c.non_negative("weights.energy_weight_cents_per_j", w.energy_weight_cents_per_j);
  c.non_negative("weights.money_weight", w.money_weight);
  c.non_negative("price_bounds.p_min", b.p_min);
  c.non_negative("price_bounds.p_max", b.p_max);
  if (b.p_min > b.p_max) c.add("price_bounds.p_min > price_bounds.p_max");
}

double draw(std::mt19937_64& rng, const Range& r) {
  if (r.low == r.high) {
    // keep the stream position independent of degeneracy
    rng.discard(1);
    return r.low;
  }
  std::uniform_real_distribution<double> dist(r.low, r.high);
  return dist(rng);
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

ScenarioSpec paper_default_spec() {
  ScenarioSpec spec;
  spec.n_users = 8;
  spec.local_freq_hz = {1.0e9, 2.0e9};
  spec.data_rate_bps = {5.0e6, 10.0e6};
  spec.tx_power_dbm = {26.0, 30.0};
  spec.capacitance = {5.0e-27, 10.0e-27};
  spec.time_penalty_cents_per_s = {300.0, 600.0};
  spec.rho_in = {0.3, 0.4};
  spec.rho_w = {0.3, 0.4};
  spec.rho_out = {0.3, 0.4};
  spec.input_bits = calibration::kInputBits;
  spec.workload_cycles = calibration::kWorkloadCycles;
  spec.output_bits = calibration::kOutputBits;
  spec.rx_power_w = calibration::kRxPowerW;
  spec.server = {10.0e9, calibration::kServerCapacitance};
  spec.weights = {calibration::kEnergyWeightCentsPerJ, calibration::kMoneyWeight};
  spec.price_bounds = {140.0, 280.0};
  return spec;
}

double dbm_to_watts(double p_dbm) {
  if (!std::isfinite(p_dbm)) throw std::invalid_argument("dbm_to_watts: non-finite input");
  return std::pow(10.0, (p_dbm - 30.0) / 10.0);
}

double min_data_rate(const Scenario& s) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& u : s.users) r = std::min(r, u.data_rate_bps);
  return r;
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  Checker c;
  if (s.users.empty()) c.add("users empty");
  for (std::size_t i = 0; i < s.users.size(); ++i) {
    const auto& u = s.users[i];
    const std::string p = "users[" + std::to_string(i) + "].";
    c.positive(p + "input_bits", u.input_bits);
    c.positive(p + "workload_cycles", u.workload_cycles);
    c.positive(p + "output_bits", u.output_bits);
    c.positive(p + "local_freq_hz", u.local_freq_hz);
    c.positive(p + "data_rate_bps", u.data_rate_bps);
    c.positive(p + "tx_power_w", u.tx_power_w);
    c.positive(p + "rx_power_w", u.rx_power_w);
    c.positive(p + "capacitance", u.capacitance);
    c.positive(p + "time_penalty_cents_per_s", u.time_penalty_cents_per_s);
    if (u.tx_power_w > 0.0 && (u.tx_power_w < 1e-3 || u.tx_power_w > 10.0)) {
      c.add(p + "tx_power_w outside [0.001, 10] W");
    }
  }
  c.unit_interval("sharing.rho_in", s.sharing.rho_in);
  c.unit_interval("sharing.rho_w", s.sharing.rho_w);
  c.unit_interval("sharing.rho_out", s.sharing.rho_out);
  check_common(c, s.server, s.weights, s.price_bounds);
  return c.take();
}

std::vector<std::string> validate_spec(const ScenarioSpec& spec) {
  Checker c;
  if (spec.n_users == 0) c.add("n_users must be >= 1");
  c.range("local_freq_hz", spec.local_freq_hz);
  c.range("data_rate_bps", spec.data_rate_bps);
  c.range("tx_power_dbm", spec.tx_power_dbm);
  c.range("capacitance", spec.capacitance);
  c.range("time_penalty_cents_per_s", spec.time_penalty_cents_per_s);
  c.range("rho_in", spec.rho_in);
  c.range("rho_w", spec.rho_w);
  c.range("rho_out", spec.rho_out);
  if (spec.local_freq_hz.low <= 0.0) c.add("local_freq_hz.low must be > 0");
  if (spec.data_rate_bps.low <= 0.0) c.add("data_rate_bps.low must be > 0");
  if (spec.capacitance.low <= 0.0) c.add("capacitance.low must be > 0");
  if (spec.time_penalty_cents_per_s.low <= 0.0) c.add("time_penalty_cents_per_s.low must be > 0");
  if (spec.tx_power_dbm.low < 0.0 || spec.tx_power_dbm.high > 40.0) {
    c.add("tx_power_dbm outside [0, 40] dBm");
  }
  for (const auto& [name, r] : {std::pair{"rho_in", spec.rho_in}, std::pair{"rho_w", spec.rho_w},
                                std::pair{"rho_out", spec.rho_out}}) {
    if (r.low < 0.0 || r.high > 1.0) c.add(std::string(name) + " not within [0,1]");
  }
  c.positive("input_bits", spec.input_bits);
  c.positive("workload_cycles", spec.workload_cycles);
  c.positive("output_bits", spec.output_bits);
  c.positive("rx_power_w", spec.rx_power_w);
  check_common(c, spec.server, spec.weights, spec.price_bounds);
  return c.take();
}

void require_valid(const Scenario& s) {
  auto v = validate_scenario(s);
  if (!v.empty()) throw ValidationError(std::move(v));
}

Scenario generate_scenario(const ScenarioSpec& spec, std::uint64_t seed) {
  auto v = validate_spec(spec);
  if (!v.empty()) throw ValidationError(std::move(v));

  std::mt19937_64 rng(seed);
  Scenario s;
  s.seed = seed;
  s.server = spec.server;
  s.weights = spec.weights;
  s.price_bounds = spec.price_bounds;
  s.sharing.rho_in = draw(rng, spec.rho_in);
  s.sharing.rho_w = draw(rng, spec.rho_w);
  s.sharing.rho_out = draw(rng, spec.rho_out);

  s.users.reserve(spec.n_users);
  for (std::size_t i = 0; i < spec.n_users; ++i) {
    UserProfile u;
    u.id = static_cast<int>(i);
    u.input_bits = spec.input_bits;
    u.workload_cycles = spec.workload_cycles;
    u.output_bits = spec.output_bits;
    u.rx_power_w = spec.rx_power_w;
    u.local_freq_hz = draw(rng, spec.local_freq_hz);
    u.data_rate_bps = draw(rng, spec.data_rate_bps);
    u.tx_power_w = dbm_to_watts(draw(rng, spec.tx_power_dbm));
    u.capacitance = draw(rng, spec.capacitance);
    u.time_penalty_cents_per_s = draw(rng, spec.time_penalty_cents_per_s);
    s.users.push_back(u);
  }
  return s;
}

}  // namespace greenmeta
