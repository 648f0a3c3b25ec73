#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include <doctest.h>

#include "txpolicy/errors.hpp"
#include "txpolicy/simulator.hpp"

using namespace txpolicy;

namespace {

DpConfig exp_dp(double pi, int n_max) {
  return DpConfig{ValuationModel::exponential(1.0), ChannelModel(0.2, 0.8, 0.5, 0.5), pi, n_max,
                  true};
}

SimConfig base_cfg(double pi, int horizon, std::vector<int> levels, int reps,
                   std::vector<PolicyKind> policies) {
  SimConfig cfg;
  cfg.dp = exp_dp(pi, horizon);
  cfg.horizon = horizon;
  cfg.initial_battery_levels = std::move(levels);
  cfg.replications = reps;
  cfg.seed = 20240815ULL;
  cfg.threads = 1;
  cfg.policies = std::move(policies);
  return cfg;
}

bool same_outcome(const SimOutcome& a, const SimOutcome& b) {
  return a.policy == b.policy && a.initial_battery == b.initial_battery &&
         a.replication == b.replication && a.total_utility == b.total_utility &&
         a.battery_lifetime == b.battery_lifetime && a.attempts == b.attempts &&
         a.successes == b.successes && a.harvested == b.harvested &&
         a.final_battery == b.final_battery;
}

}  // namespace

TEST_CASE("greedy without harvesting dies after exactly N0 slots") {
  auto cfg = base_cfg(0.0, 200, {5}, 40, {GreedyPolicy{}});
  for (const auto& o : run_campaign(cfg)) {
    CHECK(o.battery_lifetime == 5);
    CHECK(o.attempts == 5);
    CHECK(o.final_battery == 0);
    CHECK(o.harvested == 0);
  }
}

TEST_CASE("zero static threshold replays greedy exactly") {
  auto cfg = base_cfg(0.25, 120, {1, 4}, 25, {GreedyPolicy{}, StaticThresholdPolicy{0.0}});
  const auto out = run_campaign(cfg);
  const auto half = out.size() / 2;
  REQUIRE(out.size() == 2 * 2 * 25);
  for (std::size_t i = 0; i < half; ++i) {
    const auto& g = out[i];          // "greedy" sorts first
    const auto& s = out[half + i];   // "static_0"
    CHECK(g.policy == "greedy");
    CHECK(s.policy == "static_0");
    CHECK(g.initial_battery == s.initial_battery);
    CHECK(g.replication == s.replication);
    CHECK(g.total_utility == s.total_utility);
    CHECK(g.battery_lifetime == s.battery_lifetime);
    CHECK(g.attempts == s.attempts);
    CHECK(g.successes == s.successes);
  }
}

TEST_CASE("campaigns are bit-identical across reruns and thread counts") {
  const auto tables = std::make_shared<const PolicyTables>(compute_tables(exp_dp(0.2, 80)));
  auto cfg = base_cfg(0.2, 80, {2, 7}, 30,
                      {GreedyPolicy{}, PeriodicPolicy{3},
                       OptimalPolicy{tables, CsiMode::kInstantaneous}});
  const auto a = run_campaign(cfg);
  const auto b = run_campaign(cfg);
  cfg.threads = 4;
  const auto c = run_campaign(cfg);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(same_outcome(a[i], b[i]));
    CHECK(same_outcome(a[i], c[i]));
  }
}

TEST_CASE("a sensor that never transmits just accumulates harvest") {
  auto cfg = base_cfg(1.0, 60, {3}, 10, {StaticThresholdPolicy{1e12}});
  for (const auto& o : run_campaign(cfg)) {
    CHECK(o.total_utility == 0.0);
    CHECK(o.attempts == 0);
    CHECK(o.battery_lifetime == 60);
    CHECK(o.harvested == 60);
    CHECK(o.final_battery == 3 + 60);
  }
}

TEST_CASE("certain harvesting keeps a greedy sensor alive forever") {
  auto cfg = base_cfg(1.0, 100, {1}, 10, {GreedyPolicy{}});
  for (const auto& o : run_campaign(cfg)) {
    CHECK(o.battery_lifetime == 100);
    CHECK(o.attempts == 100);
    CHECK(o.final_battery == 1);
  }
}

TEST_CASE("energy is conserved in every outcome") {
  const auto tables = std::make_shared<const PolicyTables>(compute_tables(exp_dp(0.35, 150)));
  auto cfg = base_cfg(0.35, 150, {1, 3, 9}, 50,
                      {GreedyPolicy{}, PeriodicPolicy{5}, StaticThresholdPolicy{0.7},
                       OptimalPolicy{tables, CsiMode::kAveraged}});
  for (const auto& o : run_campaign(cfg)) {
    CHECK(o.attempts == o.initial_battery + o.harvested - o.final_battery);
    CHECK(o.successes <= o.attempts);
    CHECK(o.battery_lifetime >= std::min(o.initial_battery, 150));
    CHECK(o.battery_lifetime <= 150);
  }
}

TEST_CASE("run_slot rejects dead or exhausted sensors") {
  const auto dp = exp_dp(0.0, 10);
  const SlotDraws draws{1.0, true, 0.5, 0.5};
  CHECK_THROWS_AS(run_slot(SensorState{0, 5, false}, GreedyPolicy{}, dp, 0, draws), InvalidState);
  CHECK_THROWS_AS(run_slot(SensorState{2, 0, true}, GreedyPolicy{}, dp, 0, draws), InvalidState);
}

TEST_CASE("run_slot applies the slot event order") {
  const auto dp = exp_dp(0.0, 10);
  // success coin below alpha1 on a good channel: transmit succeeds
  auto r = run_slot(SensorState{1, 4, true}, GreedyPolicy{}, dp, 0, SlotDraws{2.5, true, 0.79, 0.9});
  CHECK(r.attempted);
  CHECK(r.succeeded);
  CHECK(r.utility_delta == 2.5);
  CHECK(r.state.battery == 0);
  CHECK(r.state.remaining == 3);
  CHECK_FALSE(r.state.alive);  // shutdown_on_empty with nothing harvested
  // same coin on a bad channel fails the attempt
  r = run_slot(SensorState{1, 4, true}, GreedyPolicy{}, dp, 0, SlotDraws{2.5, false, 0.79, 0.9});
  CHECK(r.attempted);
  CHECK_FALSE(r.succeeded);
  CHECK(r.utility_delta == 0.0);
  // empty battery forces a discard even for greedy
  auto dp_h = exp_dp(1.0, 10);
  r = run_slot(SensorState{0, 4, true}, GreedyPolicy{}, dp_h, 0, SlotDraws{2.5, true, 0.1, 0.0});
  CHECK_FALSE(r.attempted);
  CHECK(r.harvested);
  CHECK(r.state.battery == 1);
  CHECK(r.state.alive);
}

TEST_CASE("harvest lands after the transmit spends the unit") {
  const auto dp = exp_dp(1.0, 10);
  const auto r =
      run_slot(SensorState{1, 6, true}, GreedyPolicy{}, dp, 0, SlotDraws{0.4, true, 0.2, 0.0});
  CHECK(r.attempted);
  CHECK(r.harvested);
  CHECK(r.state.battery == 1);
  CHECK(r.state.alive);
}

TEST_CASE("simulated optimal value tracks the table prediction") {
  const int horizon = 40;
  const auto tables = std::make_shared<const PolicyTables>(compute_tables(exp_dp(0.0, horizon)));
  auto cfg = base_cfg(0.0, horizon, {6}, 4000, {OptimalPolicy{tables, CsiMode::kAveraged}});
  cfg.threads = 0;
  const auto out = run_campaign(cfg);
  double sum = 0.0, sumsq = 0.0;
  for (const auto& o : out) {
    sum += o.total_utility;
    sumsq += o.total_utility * o.total_utility;
  }
  const double n = static_cast<double>(out.size());
  const double mean = sum / n;
  const double se = std::sqrt((sumsq / n - mean * mean) / (n - 1));
  const double predicted = tables->ev(6, horizon);
  CHECK(std::abs(mean - predicted) < 3.5 * se);
}

TEST_CASE("summaries aggregate by policy and battery with normal CIs") {
  auto cfg = base_cfg(0.1, 50, {2, 5}, 64, {GreedyPolicy{}, PeriodicPolicy{2}});
  const auto out = run_campaign(cfg);
  const auto sums = summarize(out);
  REQUIRE(sums.size() == 4);
  CHECK(sums[0].policy == "greedy");
  CHECK(sums[0].initial_battery == 2);
  CHECK(sums[1].initial_battery == 5);
  CHECK(sums[2].policy == "periodic_2");
  for (const auto& s : sums) {
    double sum = 0.0, sumsq = 0.0;
    int count = 0;
    for (const auto& o : out) {
      if (o.policy != s.policy || o.initial_battery != s.initial_battery) continue;
      sum += o.total_utility;
      sumsq += o.total_utility * o.total_utility;
      ++count;
    }
    REQUIRE(count == 64);
    const double mean = sum / count;
    const double var = (sumsq - count * mean * mean) / (count - 1);
    const double half = 1.959963984540054 * std::sqrt(var / count);
    CHECK(std::abs(s.mean_utility - mean) < 1e-12);
    CHECK(std::abs(s.ci95_utility - half) < 1e-12);
    CHECK(s.ci95_lifetime >= 0.0);
  }
  // single replication: zero half-width by convention
  auto one = base_cfg(0.1, 20, {3}, 1, {GreedyPolicy{}});
  const auto s1 = summarize(run_campaign(one));
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].ci95_utility == 0.0);
  CHECK(s1[0].ci95_lifetime == 0.0);
}

TEST_CASE("sim config validation catches bad setups") {
  auto cfg = base_cfg(0.1, 50, {2}, 10, {GreedyPolicy{}});
  CHECK_NOTHROW(cfg.validate());

  auto bad = cfg;
  bad.horizon = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.initial_battery_levels = {};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.initial_battery_levels = {0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.replications = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.policies = {};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.policies = {GreedyPolicy{}, GreedyPolicy{}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);  // duplicate ids
  bad = cfg;
  const auto small = std::make_shared<const PolicyTables>(compute_tables(exp_dp(0.1, 20)));
  bad.policies = {OptimalPolicy{small, CsiMode::kInstantaneous}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);  // table shorter than horizon
  bad = cfg;
  bad.policies = {OptimalPolicy{nullptr, CsiMode::kInstantaneous}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
