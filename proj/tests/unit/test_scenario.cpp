#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "greenmeta/errors.hpp"
#include "greenmeta/scenario.hpp"
#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace greenmeta;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("dbm_to_watts reference points") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dbm_to_watts(20.0) == doctest::Approx(0.1).epsilon(1e-15));
  // 10^-0.4 from a 30-digit evaluation
  CHECK(dbm_to_watts(26.0) == doctest::Approx(0.398107170553497230).epsilon(1e-14));
}

TEST_CASE("dbm_to_watts rejects non-finite input") {
  CHECK_THROWS_AS(dbm_to_watts(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  CHECK_THROWS_AS(dbm_to_watts(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("dbm_to_watts: +10 dB is a factor of ten and the map is increasing") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-60.0, 60.0);
  for (int k = 0; k < 1000; ++k) {
    const double x = dist(rng);
    const double lo = dbm_to_watts(x), hi = dbm_to_watts(x + 10.0);
    CHECK(std::abs(hi - 10.0 * lo) <= 1e-12 * hi);
    CHECK(dbm_to_watts(x + 1e-3) > lo);
  }
}

TEST_CASE("degenerate ranges pin every drawn value") {
  auto spec = paper_default_spec();
  spec.n_users = 3;
  spec.local_freq_hz = {1.5e9, 1.5e9};
  spec.data_rate_bps = {7e6, 7e6};
  spec.tx_power_dbm = {20.0, 20.0};
  spec.capacitance = {6e-27, 6e-27};
  spec.time_penalty_cents_per_s = {400.0, 400.0};
  spec.rho_in = spec.rho_w = spec.rho_out = {0.35, 0.35};
  const auto s = generate_scenario(spec, 99);
  REQUIRE(s.size() == 3);
  for (const auto& u : s.users) {
    CHECK(u.local_freq_hz == 1.5e9);
    CHECK(u.data_rate_bps == 7e6);
    CHECK(u.tx_power_w == doctest::Approx(0.1));
    CHECK(u.capacitance == 6e-27);
    CHECK(u.time_penalty_cents_per_s == 400.0);
  }
  CHECK(s.sharing.rho_w == 0.35);
}

TEST_CASE("default spec draws eight users inside the published ranges") {
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 123456789ull}) {
    const auto s = testing::paper_scenario(seed);
    REQUIRE(s.size() == 8);
    CHECK(s.seed == seed);
    for (const auto& u : s.users) {
      CHECK(u.local_freq_hz >= 1e9);
      CHECK(u.local_freq_hz <= 2e9);
      CHECK(u.data_rate_bps >= 5e6);
      CHECK(u.data_rate_bps <= 10e6);
      CHECK(u.tx_power_w >= dbm_to_watts(26.0) * (1 - 1e-12));
      CHECK(u.tx_power_w <= dbm_to_watts(30.0) * (1 + 1e-12));
      CHECK(u.capacitance >= 5e-27);
      CHECK(u.capacitance <= 10e-27);
      CHECK(u.time_penalty_cents_per_s >= 300.0);
      CHECK(u.time_penalty_cents_per_s <= 600.0);
    }
    for (double rho : {s.sharing.rho_in, s.sharing.rho_w, s.sharing.rho_out}) {
      CHECK(rho >= 0.3);
      CHECK(rho <= 0.4);
    }
    CHECK(s.server.total_freq_hz == 10e9);
    CHECK(s.price_bounds.p_min == 140.0);
    CHECK(s.price_bounds.p_max == 280.0);
  }
}

TEST_CASE("generation is deterministic per seed") {
  const auto spec = paper_default_spec();
  CHECK(generate_scenario(spec, 5) == generate_scenario(spec, 5));
  CHECK_FALSE(generate_scenario(spec, 5) == generate_scenario(spec, 6));
}

TEST_CASE("generated scenarios always validate") {
  auto spec = paper_default_spec();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    spec.n_users = 1 + seed % 12;
    CHECK(validate_scenario(generate_scenario(spec, seed)).empty());
  }
}

TEST_CASE("validate_scenario reports violations with field paths") {
  auto s = testing::paper_scenario();
  CHECK(validate_scenario(s).empty());

  auto bad_rho = s;
  bad_rho.sharing.rho_w = 1.3;
  CHECK(contains(validate_scenario(bad_rho), "sharing.rho_w not in [0,1]"));

  auto empty = s;
  empty.users.clear();
  CHECK(contains(validate_scenario(empty), "users empty"));

  auto several = s;
  several.users[2].data_rate_bps = 0.0;
  several.users[5].tx_power_w = 50.0;
  several.price_bounds = {300.0, 200.0};
  const auto v = validate_scenario(several);
  CHECK(contains(v, "users[2].data_rate_bps"));
  CHECK(contains(v, "users[5].tx_power_w"));
  CHECK(contains(v, "price_bounds.p_min > price_bounds.p_max"));
  CHECK_THROWS_AS(require_valid(several), ValidationError);
}

TEST_CASE("invalid spec is rejected with every offending range") {
  auto spec = paper_default_spec();
  spec.data_rate_bps = {10e6, 5e6};
  spec.rho_in = {0.5, 1.5};
  try {
    generate_scenario(spec, 1);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(contains(e.violations(), "data_rate_bps has low > high"));
    CHECK(contains(e.violations(), "rho_in not within [0,1]"));
  }
}
