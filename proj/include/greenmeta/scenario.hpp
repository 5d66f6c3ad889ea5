#pragma once

// Domain types for one MSP serving N co-located AR users, plus the seeded
// generator that draws heterogeneous user populations.
//
// Units are SI throughout (bits, cycles, Hz, bits/s, W, J, s) except money,
// which is in cents. Transmit power is drawn in dBm and stored in watts.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace greenmeta {

struct UserProfile {
  int id = 0;
  double input_bits = 0.0;                // D_in
  double workload_cycles = 0.0;           // W, tracker + mapper + recognizer + renderer
  double output_bits = 0.0;               // D_out
  double local_freq_hz = 0.0;             // f_loc
  double data_rate_bps = 0.0;             // r
  double tx_power_w = 0.0;                // P_tx
  double rx_power_w = 0.0;                // P_rx
  double capacitance = 0.0;               // kappa, W*s^3/cycle^3
  double time_penalty_cents_per_s = 0.0;  // lambda

  bool operator==(const UserProfile&) const = default;
};

struct ServerProfile {
  double total_freq_hz = 0.0;       // F
  double server_capacitance = 0.0;  // kappa_srv, energy accounting only

  bool operator==(const ServerProfile&) const = default;
};

// Fractions of input data, workload and output data that are shared among
// offloaders and therefore transmitted or executed once.
struct SharingFactors {
  double rho_in = 0.0;
  double rho_w = 0.0;
  double rho_out = 0.0;

  bool operator==(const SharingFactors&) const = default;
};

struct CostWeights {
  double energy_weight_cents_per_j = 0.0;  // mu_E
  double money_weight = 1.0;               // mu_M

  bool operator==(const CostWeights&) const = default;
};

struct PriceBounds {
  double p_min = 0.0;
  double p_max = 0.0;

  bool operator==(const PriceBounds&) const = default;
};

struct Scenario {
  std::vector<UserProfile> users;
  ServerProfile server;
  SharingFactors sharing;
  CostWeights weights;
  PriceBounds price_bounds;
  std::uint64_t seed = 0;  // provenance only

  std::size_t size() const noexcept { return users.size(); }
  bool operator==(const Scenario&) const = default;
};

struct Range {
  double low = 0.0;
  double high = 0.0;

  bool operator==(const Range&) const = default;
};

// Distributions for generate_scenario. Every Range is sampled uniformly; a
// degenerate range (low == high) pins the value. Sharing factors are drawn
// once per scenario, everything else once per user.
struct ScenarioSpec {
  std::size_t n_users = 0;
  Range local_freq_hz;
  Range data_rate_bps;
  Range tx_power_dbm;
  Range capacitance;
  Range time_penalty_cents_per_s;
  Range rho_in;
  Range rho_w;
  Range rho_out;
  double input_bits = 0.0;
  double workload_cycles = 0.0;
  double output_bits = 0.0;
  double rx_power_w = 0.0;
  ServerProfile server;
  CostWeights weights;
  PriceBounds price_bounds;

  bool operator==(const ScenarioSpec&) const = default;
};

// Calibration constants for quantities the experimental setup leaves
// unstated. See README for how they were chosen.
namespace calibration {
inline constexpr double kInputBits = 4.0e6;
inline constexpr double kWorkloadCycles = 1.0e9;
inline constexpr double kOutputBits = 1.0e6;
inline constexpr double kRxPowerW = 0.1;
inline constexpr double kServerCapacitance = 2.0e-27;
inline constexpr double kEnergyWeightCentsPerJ = 30.0;
inline constexpr double kMoneyWeight = 1.0;
inline constexpr std::uint64_t kDefaultSeed = 9;
}  // namespace calibration

// Eight users, f ~ U[1,2] GHz, r ~ U[5,10] Mbps, P_tx ~ U[26,30] dBm,
// kappa ~ U[5,10]e-27, lambda ~ U[300,600] cents/s, rho ~ U[0.3,0.4],
// F = 10 GHz, price in [140, 280] cents.
ScenarioSpec paper_default_spec();

// 10^((dBm - 30) / 10). Throws std::invalid_argument on non-finite input.
double dbm_to_watts(double p_dbm);

double min_data_rate(const Scenario& s);

// Empty result means valid. Entries look like "sharing.rho_w not in [0,1]".
std::vector<std::string> validate_scenario(const Scenario& s);
std::vector<std::string> validate_spec(const ScenarioSpec& spec);

// Throws ValidationError when the corresponding validate_* is non-empty.
void require_valid(const Scenario& s);

// Pure function of (spec, seed) within one build. Throws ValidationError on
// an invalid spec.
Scenario generate_scenario(const ScenarioSpec& spec, std::uint64_t seed);

}  // namespace greenmeta
