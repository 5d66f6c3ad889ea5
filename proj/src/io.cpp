#include "greenmeta/io.hpp"

#include "greenmeta/errors.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace greenmeta {

using nlohmann::json;

namespace {

void check_schema(const json& j) {
  if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion) {
    throw ValidationError({"schema_version " + j.at("schema_version").dump() +
                           " is not supported (expected " + std::to_string(kSchemaVersion) + ")"});
  }
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

template <typename T>
T parse_as(const std::string& text, const char* what) {
  try {
    const json j = json::parse(text);
    check_schema(j);
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ValidationError({std::string(what) + ": " + e.what()});
  }
}

}  // namespace

void to_json(json& j, const UserProfile& u) {
  j = json{{"id", u.id},
           {"input_bits", u.input_bits},
           {"workload_cycles", u.workload_cycles},
           {"output_bits", u.output_bits},
           {"local_freq_hz", u.local_freq_hz},
           {"data_rate_bps", u.data_rate_bps},
           {"tx_power_w", u.tx_power_w},
           {"rx_power_w", u.rx_power_w},
           {"capacitance", u.capacitance},
           {"time_penalty_cents_per_s", u.time_penalty_cents_per_s}};
}

void from_json(const json& j, UserProfile& u) {
  j.at("id").get_to(u.id);
  j.at("input_bits").get_to(u.input_bits);
  j.at("workload_cycles").get_to(u.workload_cycles);
  j.at("output_bits").get_to(u.output_bits);
  j.at("local_freq_hz").get_to(u.local_freq_hz);
  j.at("data_rate_bps").get_to(u.data_rate_bps);
  j.at("tx_power_w").get_to(u.tx_power_w);
  j.at("rx_power_w").get_to(u.rx_power_w);
  j.at("capacitance").get_to(u.capacitance);
  j.at("time_penalty_cents_per_s").get_to(u.time_penalty_cents_per_s);
}

void to_json(json& j, const ServerProfile& s) {
  j = json{{"total_freq_hz", s.total_freq_hz}, {"server_capacitance", s.server_capacitance}};
}

void from_json(const json& j, ServerProfile& s) {
  j.at("total_freq_hz").get_to(s.total_freq_hz);
  j.at("server_capacitance").get_to(s.server_capacitance);
}

void to_json(json& j, const SharingFactors& s) {
  j = json{{"rho_in", s.rho_in}, {"rho_w", s.rho_w}, {"rho_out", s.rho_out}};
}

void from_json(const json& j, SharingFactors& s) {
  j.at("rho_in").get_to(s.rho_in);
  j.at("rho_w").get_to(s.rho_w);
  j.at("rho_out").get_to(s.rho_out);
}

void to_json(json& j, const CostWeights& w) {
  j = json{{"energy_weight_cents_per_j", w.energy_weight_cents_per_j},
           {"money_weight", w.money_weight}};
}

void from_json(const json& j, CostWeights& w) {
  j.at("energy_weight_cents_per_j").get_to(w.energy_weight_cents_per_j);
  j.at("money_weight").get_to(w.money_weight);
}

void to_json(json& j, const PriceBounds& b) { j = json{{"p_min", b.p_min}, {"p_max", b.p_max}}; }

void from_json(const json& j, PriceBounds& b) {
  j.at("p_min").get_to(b.p_min);
  j.at("p_max").get_to(b.p_max);
}

void to_json(json& j, const Range& r) { j = json{{"low", r.low}, {"high", r.high}}; }

void from_json(const json& j, Range& r) {
  j.at("low").get_to(r.low);
  j.at("high").get_to(r.high);
}

void to_json(json& j, const Scenario& s) {
  j = json{{"schema_version", kSchemaVersion},
           {"users", s.users},
           {"server", s.server},
           {"sharing", s.sharing},
           {"weights", s.weights},
           {"price_bounds", s.price_bounds},
           {"seed", s.seed}};
}

void from_json(const json& j, Scenario& s) {
  j.at("users").get_to(s.users);
  j.at("server").get_to(s.server);
  j.at("sharing").get_to(s.sharing);
  j.at("weights").get_to(s.weights);
  j.at("price_bounds").get_to(s.price_bounds);
  s.seed = j.value("seed", std::uint64_t{0});
}

void to_json(json& j, const ScenarioSpec& s) {
  j = json{{"schema_version", kSchemaVersion},
           {"n_users", s.n_users},
           {"local_freq_hz", s.local_freq_hz},
           {"data_rate_bps", s.data_rate_bps},
           {"tx_power_dbm", s.tx_power_dbm},
           {"capacitance", s.capacitance},
           {"time_penalty_cents_per_s", s.time_penalty_cents_per_s},
           {"rho_in", s.rho_in},
           {"rho_w", s.rho_w},
           {"rho_out", s.rho_out},
           {"input_bits", s.input_bits},
           {"workload_cycles", s.workload_cycles},
           {"output_bits", s.output_bits},
           {"rx_power_w", s.rx_power_w},
           {"server", s.server},
           {"weights", s.weights},
           {"price_bounds", s.price_bounds}};
}

void from_json(const json& j, ScenarioSpec& s) {
  j.at("n_users").get_to(s.n_users);
  j.at("local_freq_hz").get_to(s.local_freq_hz);
  j.at("data_rate_bps").get_to(s.data_rate_bps);
  j.at("tx_power_dbm").get_to(s.tx_power_dbm);
  j.at("capacitance").get_to(s.capacitance);
  j.at("time_penalty_cents_per_s").get_to(s.time_penalty_cents_per_s);
  j.at("rho_in").get_to(s.rho_in);
  j.at("rho_w").get_to(s.rho_w);
  j.at("rho_out").get_to(s.rho_out);
  j.at("input_bits").get_to(s.input_bits);
  j.at("workload_cycles").get_to(s.workload_cycles);
  j.at("output_bits").get_to(s.output_bits);
  j.at("rx_power_w").get_to(s.rx_power_w);
  j.at("server").get_to(s.server);
  j.at("weights").get_to(s.weights);
  j.at("price_bounds").get_to(s.price_bounds);
}

json solution_to_json(const StackelbergSolution& sol) {
  return json{{"schema_version", kSchemaVersion},
              {"price_cents", sol.price_cents},
              {"alphas", vector_to_json(sol.equilibrium.alphas)},
              {"sum_alpha", sol.equilibrium.sum_alpha},
              {"revenue_cents", sol.revenue_cents},
              {"phi", sol.demand.phi},
              {"theta", sol.demand.theta},
              {"regime", std::string(to_string(sol.regime))},
              {"follower_iterations", sol.equilibrium.iterations},
              {"follower_residual", sol.equilibrium.residual}};
}

json breakdown_to_json(const CostBreakdownD& bd) {
  return json{{"schema_version", kSchemaVersion},
              {"c_loc_cents", vector_to_json(bd.c_loc)},
              {"a_cents", vector_to_json(bd.a)},
              {"b_cents", vector_to_json(bd.b)},
              {"money_weight", bd.money_weight}};
}

json comparison_to_json(const ComparisonReport& report, const Scenario& s) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back(json{{"scheme", std::string(to_string(r.scheme))},
                        {"price_cents", r.price_cents},
                        {"alphas", vector_to_json(r.alphas)},
                        {"total_energy_j", r.total_energy_j},
                        {"avg_cost_cents", r.avg_cost_cents},
                        {"revenue_cents", r.revenue_cents}});
  }
  json deltas{
      {"energy_reduction_pct_vs_alp",
       {{"ATO", report.energy_reduction_pct(Scheme::ATO)},
        {"STACKELBERG", report.energy_reduction_pct(Scheme::STACKELBERG)}}},
      {"cost_reduction_pct_stackelberg_vs_alp", report.cost_reduction_pct(Scheme::ALP)},
      {"cost_reduction_pct_stackelberg_vs_ato", report.cost_reduction_pct(Scheme::ATO)}};
  json calibration{{"server", s.server},
                   {"sharing", s.sharing},
                   {"weights", s.weights},
                   {"price_bounds", s.price_bounds}};
  if (!s.users.empty()) {
    calibration["input_bits"] = s.users.front().input_bits;
    calibration["workload_cycles"] = s.users.front().workload_cycles;
    calibration["output_bits"] = s.users.front().output_bits;
    calibration["rx_power_w"] = s.users.front().rx_power_w;
  }
  return json{{"schema_version", kSchemaVersion},
              {"rows", rows},
              {"deltas", deltas},
              {"stackelberg_regime", std::string(to_string(report.stackelberg_regime))},
              {"provenance", {{"seed", report.seed}, {"calibration", calibration}}}};
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "price_cents,sum_alpha,revenue_cents,regime\n";
  for (const auto& r : rows) {
    out << format_number(r.price_cents) << ',' << format_number(r.sum_alpha) << ','
        << format_number(r.revenue_cents) << ','
        << (r.converged ? to_string(r.regime) : std::string_view("not-converged")) << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
  out << "scheme,price_cents,total_energy_j,avg_cost_cents,revenue_cents\n";
  for (const auto& r : report.rows) {
    out << to_string(r.scheme) << ',' << format_number(r.price_cents) << ','
        << format_number(r.total_energy_j) << ',' << format_number(r.avg_cost_cents) << ','
        << format_number(r.revenue_cents) << '\n';
  }
}

Scenario scenario_from_string(const std::string& text) {
  return parse_as<Scenario>(text, "scenario");
}

ScenarioSpec spec_from_string(const std::string& text) {
  return parse_as<ScenarioSpec>(text, "scenario spec");
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace greenmeta
