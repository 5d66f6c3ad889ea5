#pragma once

// JSON and CSV encodings of scenarios, solutions and experiment outputs.
// Field names match the C++ member names; units are SI with money in cents.
// Every top-level JSON document carries "schema_version".

#include "greenmeta/cost_model.hpp"
#include "greenmeta/experiments.hpp"
#include "greenmeta/leader_pricing.hpp"
#include "greenmeta/scenario.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace greenmeta {

inline constexpr int kSchemaVersion = 1;

void to_json(nlohmann::json& j, const UserProfile& u);
void from_json(const nlohmann::json& j, UserProfile& u);
void to_json(nlohmann::json& j, const ServerProfile& s);
void from_json(const nlohmann::json& j, ServerProfile& s);
void to_json(nlohmann::json& j, const SharingFactors& s);
void from_json(const nlohmann::json& j, SharingFactors& s);
void to_json(nlohmann::json& j, const CostWeights& w);
void from_json(const nlohmann::json& j, CostWeights& w);
void to_json(nlohmann::json& j, const PriceBounds& b);
void from_json(const nlohmann::json& j, PriceBounds& b);
void to_json(nlohmann::json& j, const Range& r);
void from_json(const nlohmann::json& j, Range& r);
void to_json(nlohmann::json& j, const Scenario& s);
void from_json(const nlohmann::json& j, Scenario& s);
void to_json(nlohmann::json& j, const ScenarioSpec& s);
void from_json(const nlohmann::json& j, ScenarioSpec& s);

nlohmann::json solution_to_json(const StackelbergSolution& sol);
nlohmann::json breakdown_to_json(const CostBreakdownD& bd);
// Rows, deltas and provenance (seed and calibration constants).
nlohmann::json comparison_to_json(const ComparisonReport& report, const Scenario& s);

// Shortest decimal string that round-trips to the same double.
std::string format_number(double x);

// Header: price_cents,sum_alpha,revenue_cents,regime
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
// Header: scheme,price_cents,total_energy_j,avg_cost_cents,revenue_cents
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);

// Parse/serialize helpers. Parse errors surface as ValidationError naming
// the offending field.
Scenario scenario_from_string(const std::string& text);
ScenarioSpec spec_from_string(const std::string& text);
std::string dump_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace greenmeta
