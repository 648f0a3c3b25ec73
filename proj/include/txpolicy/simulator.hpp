#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "txpolicy/policies.hpp"

namespace txpolicy {

struct SimConfig {
  DpConfig dp;
  int horizon = 1000;
  std::vector<int> initial_battery_levels;
  int replications = 100;
  std::uint64_t seed = 123456789ULL;
  int threads = 0;  // 0 = hardware concurrency
  std::vector<PolicyKind> policies;

  void validate() const;
};

struct SensorState {
  int battery = 0;
  int remaining = 0;
  bool alive = true;
};

// One slot's worth of randomness, drawn once per replication and replayed
// for every policy and battery level (common random numbers).
struct SlotDraws {
  double valuation = 0.0;
  bool channel_good = false;
  double success_coin = 0.0;
  double harvest_coin = 0.0;
};

struct SlotResult {
  SensorState state;
  double utility_delta = 0.0;
  bool attempted = false;
  bool succeeded = false;
  bool harvested = false;
};

struct SimOutcome {
  std::string policy;
  int initial_battery = 0;
  int replication = 0;
  double total_utility = 0.0;
  int battery_lifetime = 0;  // 1-based last slot alive, capped at horizon
  long attempts = 0;
  long successes = 0;
  // bookkeeping beyond the CSV contract, used by conservation checks
  long harvested = 0;
  int final_battery = 0;
};

struct Summary {
  std::string policy;
  int initial_battery = 0;
  double mean_utility = 0.0;
  double ci95_utility = 0.0;
  double mean_lifetime = 0.0;
  double ci95_lifetime = 0.0;
};

// One slot: sense, observe channel, decide (forced discard on empty battery),
// transmit, harvest, countdown, shutdown check. Throws InvalidState when the
// sensor is dead or out of slots.
SlotResult run_slot(const SensorState& state, const PolicyKind& policy, const DpConfig& dp,
                    long slot_index, const SlotDraws& draws);

std::vector<SlotDraws> draw_trace(const ValuationModel& valuation, const ChannelModel& channel,
                                  int horizon, RandomStream& rng);

SimOutcome run_trace(const PolicyKind& policy, const DpConfig& dp, int horizon,
                     int initial_battery, int replication, const std::vector<SlotDraws>& trace);

// All (policy, N0, replication) combinations; replications run in parallel.
// Output is sorted by (policy id, N0, replication) and is independent of the
// thread count.
std::vector<SimOutcome> run_campaign(const SimConfig& cfg);

// Per-(policy, N0) mean and normal-approximation 95% CI half-widths.
std::vector<Summary> summarize(const std::vector<SimOutcome>& outcomes);

}  // namespace txpolicy
