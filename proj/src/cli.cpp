#include "greenmeta/cli.hpp"

#include "greenmeta/errors.hpp"
#include "greenmeta/experiments.hpp"
#include "greenmeta/io.hpp"
#include "greenmeta/leader_pricing.hpp"
#include "greenmeta/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

namespace greenmeta {

namespace {

struct CliConfig {
  std::string scenario_path;
  std::string spec_path;
  bool paper_defaults = false;
  std::uint64_t seed = calibration::kDefaultSeed;
  std::string out;
  std::string json_out;
  double step = 1.0;
  double tol = 1e-10;
  int max_sweeps = 100000;
  double grid_step = 1.0;
  double refine_tol = 1e-6;
  std::optional<double> ato_price;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_source_options(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--scenario", cfg.scenario_path, "Scenario JSON file");
  cmd->add_option("--spec", cfg.spec_path, "ScenarioSpec JSON file (generated with --seed)");
  cmd->add_flag("--paper-defaults", cfg.paper_defaults,
                "Use the built-in eight-user setup (generated with --seed)");
  cmd->add_option("--seed", cfg.seed, "Generator seed for --spec / --paper-defaults");
}

void add_solver_options(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--tol", cfg.tol, "Follower best-response tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-sweeps", cfg.max_sweeps, "Follower sweep limit")
      ->check(CLI::PositiveNumber);
}

void add_search_options(CLI::App* cmd, CliConfig& cfg) {
  add_solver_options(cmd, cfg);
  cmd->add_option("--grid-step", cfg.grid_step, "Leader price grid step (cents)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--refine-tol", cfg.refine_tol, "Golden-section tolerance (cents)")
      ->check(CLI::PositiveNumber);
}

ScenarioSpec load_spec(const CliConfig& cfg) {
  if (cfg.paper_defaults) return paper_default_spec();
  return spec_from_string(read_text_file(cfg.spec_path));
}

Scenario load_scenario(const CliConfig& cfg) {
  const int sources = static_cast<int>(!cfg.scenario_path.empty()) +
                      static_cast<int>(!cfg.spec_path.empty()) +
                      static_cast<int>(cfg.paper_defaults);
  if (sources != 1) {
    throw UsageError("exactly one of --scenario, --spec, --paper-defaults is required");
  }
  if (!cfg.scenario_path.empty()) {
    auto s = scenario_from_string(read_text_file(cfg.scenario_path));
    require_valid(s);
    return s;
  }
  return generate_scenario(load_spec(cfg), cfg.seed);
}

FollowerSolverOptions follower_options(const CliConfig& cfg) {
  FollowerSolverOptions f;
  f.tol = cfg.tol;
  f.max_sweeps = cfg.max_sweeps;
  return f;
}

SearchOptions search_options(const CliConfig& cfg) {
  SearchOptions s;
  s.grid_step = cfg.grid_step;
  s.refine_tol = cfg.refine_tol;
  s.follower = follower_options(cfg);
  return s;
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty()) {
    out << contents;
  } else {
    write_text_file(path, contents);
  }
}

int cmd_gen_scenario(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.paper_defaults == !cfg.spec_path.empty()) {
    throw UsageError("gen-scenario needs exactly one of --spec, --paper-defaults");
  }
  const auto s = generate_scenario(load_spec(cfg), cfg.seed);
  emit(cfg.out, dump_json(nlohmann::json(s)), out);
  err << "generated scenario with " << s.size() << " users (seed " << s.seed << ")\n";
  return kExitOk;
}

int cmd_solve(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto s = load_scenario(cfg);
  const auto sol = solve_stackelberg(s, search_options(cfg));
  emit(cfg.out, dump_json(solution_to_json(sol)), out);
  err << "price " << format_number(sol.price_cents) << " cents, revenue "
      << format_number(sol.revenue_cents) << " cents, regime " << to_string(sol.regime) << '\n';
  return kExitOk;
}

int cmd_breakdown(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  const auto s = load_scenario(cfg);
  emit(cfg.out, dump_json(breakdown_to_json(cost_breakdown(s))), out);
  return kExitOk;
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto s = load_scenario(cfg);
  const auto rows = price_sweep(s, cfg.step, follower_options(cfg));
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  emit(cfg.out, csv.str(), out);
  int failed = 0;
  for (const auto& r : rows) {
    if (!r.converged) {
      err << "follower solver did not converge at price " << format_number(r.price_cents)
          << '\n';
      ++failed;
    }
  }
  err << rows.size() << " sweep rows written\n";
  return failed ? kExitNonConvergence : kExitOk;
}

int cmd_compare(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto s = load_scenario(cfg);
  ComparisonOptions opt;
  opt.search = search_options(cfg);
  opt.ato_price = cfg.ato_price;
  const auto report = compare(s, opt);

  std::ostringstream csv;
  write_comparison_csv(csv, report);
  emit(cfg.out, csv.str(), out);

  std::string json_path = cfg.json_out;
  if (json_path.empty() && !cfg.out.empty()) {
    json_path = std::filesystem::path(cfg.out).replace_extension(".json").string();
  }
  const auto doc = dump_json(comparison_to_json(report, s));
  if (json_path.empty()) {
    out << doc;
  } else {
    write_text_file(json_path, doc);
  }
  err << "energy reduction vs ALP: " << format_number(report.energy_reduction_pct(Scheme::STACKELBERG))
      << "%, cost reduction vs ALP/ATO: " << format_number(report.cost_reduction_pct(Scheme::ALP))
      << "% / " << format_number(report.cost_reduction_pct(Scheme::ATO)) << "%\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uniform-price Stackelberg offloading game for co-located AR users"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* gen = app.add_subcommand("gen-scenario", "Generate a scenario JSON");
  gen->add_option("--spec", cfg.spec_path, "ScenarioSpec JSON file");
  gen->add_flag("--paper-defaults", cfg.paper_defaults, "Use the built-in eight-user setup");
  gen->add_option("--seed", cfg.seed, "Generator seed");
  gen->add_option("--out", cfg.out, "Output file (default: standard output)");

  auto* solve = app.add_subcommand("solve", "Solve for the Stackelberg price and equilibrium");
  add_source_options(solve, cfg);
  add_search_options(solve, cfg);
  solve->add_option("--out", cfg.out, "Output JSON (default: standard output)");

  auto* sweep = app.add_subcommand("sweep", "Follower equilibrium over a price grid");
  add_source_options(sweep, cfg);
  add_solver_options(sweep, cfg);
  sweep->add_option("--step", cfg.step, "Price step (cents)")
      ->required()
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", cfg.out, "Output CSV (default: standard output)");

  auto* cmp = app.add_subcommand("compare", "Compare ALP, ATO and the Stackelberg scheme");
  add_source_options(cmp, cfg);
  add_search_options(cmp, cfg);
  cmp->add_option("--out", cfg.out, "Output CSV (default: standard output)");
  cmp->add_option("--json", cfg.json_out, "Output JSON with deltas (default: --out with .json)");
  cmp->add_option("--ato-price", cfg.ato_price, "Price charged under ATO (default: solved price)")
      ->check(CLI::NonNegativeNumber);

  auto* bd = app.add_subcommand("breakdown", "Per-user cost coefficients as JSON");
  add_source_options(bd, cfg);
  bd->add_option("--out", cfg.out, "Output JSON (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen_scenario(cfg, out, err);
    if (solve->parsed()) return cmd_solve(cfg, out, err);
    if (sweep->parsed()) return cmd_sweep(cfg, out, err);
    if (cmp->parsed()) return cmd_compare(cfg, out, err);
    if (bd->parsed()) return cmd_breakdown(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("greenmeta");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace greenmeta
