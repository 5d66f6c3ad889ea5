#include "greenmeta/experiments.hpp"

#include "greenmeta/cost_model.hpp"
#include "greenmeta/follower_game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace greenmeta {

namespace {

SchemeResult make_result(const Scenario& s, Scheme scheme, Eigen::VectorXd alphas, double p) {
  const auto m = evaluate_assignment(s, alphas, p);
  SchemeResult r;
  r.scheme = scheme;
  r.alphas = std::move(alphas);
  r.price_cents = p;
  r.total_energy_j = m.total_energy_j;
  r.avg_cost_cents = m.avg_cost_cents;
  r.revenue_cents = m.revenue_cents;
  return r;
}

SchemeResult fixed_scheme(const Scenario& s, Scheme scheme, double ato_price) {
  const auto n = static_cast<Eigen::Index>(s.size());
  if (scheme == Scheme::ALP) return make_result(s, scheme, Eigen::VectorXd::Zero(n), 0.0);
  return make_result(s, scheme, Eigen::VectorXd::Ones(n), ato_price);
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::ALP:
      return "ALP";
    case Scheme::ATO:
      return "ATO";
    case Scheme::STACKELBERG:
      return "STACKELBERG";
  }
  return "unknown";
}

AssignmentMetrics evaluate_assignment(const Scenario& s, const Eigen::VectorXd& alphas, double p) {
  require_valid(s);
  const auto n = static_cast<Eigen::Index>(s.size());
  if (alphas.size() != n) throw std::invalid_argument("alphas size must equal number of users");
  if ((alphas.array() < 0.0).any() || (alphas.array() > 1.0).any()) {
    throw std::invalid_argument("alphas must lie in [0,1]");
  }
  if (!(p >= 0.0)) throw std::invalid_argument("price must be >= 0");

  const double f_srv = s.server.total_freq_hz;
  const double rho_w = s.sharing.rho_w;
  const double sum_alpha = alphas.sum();

  double device_energy = 0.0;
  double individual_cycles = 0.0;
  double shared_cycles = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& u = s.users[static_cast<std::size_t>(i)];
    const double a = alphas(i);
    device_energy += (1.0 - a) * local_profile(u, s.weights).energy_j +
                     a * transfer_profile(u, s).energy_j();
    individual_cycles += a * (1.0 - rho_w) * u.workload_cycles;
    shared_cycles = std::max(shared_cycles, rho_w * u.workload_cycles);
  }

  double server_energy = 0.0;
  if (sum_alpha > 0.0) {
    const double per_user_freq = f_srv / std::max(sum_alpha, 1.0);
    server_energy = s.server.server_capacitance *
                    (f_srv * f_srv * shared_cycles + per_user_freq * per_user_freq * individual_cycles);
  }

  const auto bd = cost_breakdown(s);
  double total_cost = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) total_cost += expected_cost(i, alphas, p, bd);

  AssignmentMetrics m;
  m.total_energy_j = device_energy + server_energy;
  m.avg_cost_cents = total_cost / static_cast<double>(n);
  m.revenue_cents = revenue(p, sum_alpha);
  return m;
}

SchemeResult run_scheme(const Scenario& s, Scheme scheme, const ComparisonOptions& opt) {
  switch (scheme) {
    case Scheme::ALP:
      return fixed_scheme(s, scheme, 0.0);
    case Scheme::ATO: {
      const double p =
          opt.ato_price ? *opt.ato_price : solve_stackelberg(s, opt.search).price_cents;
      return fixed_scheme(s, scheme, p);
    }
    case Scheme::STACKELBERG: {
      auto sol = solve_stackelberg(s, opt.search);
      return make_result(s, scheme, std::move(sol.equilibrium.alphas), sol.price_cents);
    }
  }
  throw std::invalid_argument("unknown scheme");
}

std::vector<SweepRow> price_sweep(const Scenario& s, double step,
                                  const FollowerSolverOptions& follower) {
  if (!(step > 0.0)) throw std::invalid_argument("sweep step must be > 0");
  const auto bd = cost_breakdown(s);
  const auto& b = s.price_bounds;
  const auto steps = static_cast<long>(std::floor((b.p_max - b.p_min) / step + 1e-9));

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k) {
    SweepRow row;
    row.price_cents = b.p_min + static_cast<double>(k) * step;
    try {
      const auto eq = nash_iterative(row.price_cents, bd, follower);
      row.sum_alpha = eq.sum_alpha;
      row.alphas = eq.alphas;
      row.regime = eq.interior ? Regime::InteriorClosedForm : Regime::BoundaryClamped;
      row.max_gain_cents = verify_nash(eq, row.price_cents, bd, 1e-3);
    } catch (const ConvergenceError& e) {
      row.converged = false;
      row.alphas = e.last_iterate();
      row.sum_alpha = row.alphas.sum();
    }
    row.expected_offloaders = row.sum_alpha;
    row.revenue_cents = revenue(row.price_cents, row.sum_alpha);
    rows.push_back(std::move(row));
  }
  return rows;
}

const SchemeResult& ComparisonReport::row(Scheme s) const {
  return rows[static_cast<std::size_t>(s)];
}

double ComparisonReport::energy_reduction_pct(Scheme s) const {
  return 100.0 * (1.0 - row(s).total_energy_j / row(Scheme::ALP).total_energy_j);
}

double ComparisonReport::cost_reduction_pct(Scheme baseline) const {
  return 100.0 * (1.0 - row(Scheme::STACKELBERG).avg_cost_cents / row(baseline).avg_cost_cents);
}

ComparisonReport compare(const Scenario& s, const ComparisonOptions& opt) {
  const auto sol = solve_stackelberg(s, opt.search);
  ComparisonReport report;
  report.seed = s.seed;
  report.stackelberg_regime = sol.regime;
  report.rows[0] = fixed_scheme(s, Scheme::ALP, 0.0);
  report.rows[1] = fixed_scheme(s, Scheme::ATO, opt.ato_price.value_or(sol.price_cents));
  report.rows[2] = make_result(s, Scheme::STACKELBERG, sol.equilibrium.alphas, sol.price_cents);
  return report;
}

}  // namespace greenmeta
