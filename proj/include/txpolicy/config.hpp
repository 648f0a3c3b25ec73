#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "txpolicy/simulator.hpp"

namespace txpolicy {

enum class PolicyChoice { kOptimal, kGreedy, kPeriodic, kStatic };

struct PolicySpec {
  PolicyChoice choice = PolicyChoice::kOptimal;
  CsiMode csi = CsiMode::kInstantaneous;  // optimal only
  int period = 1;                         // periodic only
  double level = 0.0;                     // static only
};

// Everything a subcommand needs: model, experiment shape, policy roster,
// and optional output path. Defaults reproduce the reference experiment:
// exponential(1) valuation, channel (0.2, 0.8, mu 0.5, rho_th 0.5), pi 0,
// horizon 1000, battery levels 1..100, 100 replications.
struct ExperimentConfig {
  DpConfig dp;
  int horizon = 1000;
  std::vector<int> initial_battery_levels;
  int replications = 100;
  std::uint64_t seed = 123456789ULL;
  int threads = 0;
  std::vector<PolicySpec> policies;
  std::optional<std::string> out;
};

ExperimentConfig default_config();

// Strict parse: unknown keys and type mismatches are rejected with the field
// path. Throws ParseError for malformed JSON, ValidationError otherwise.
ExperimentConfig parse_config(const std::string& json_text);

// Reads and parses; IoError when the file cannot be read.
ExperimentConfig load_config(const std::string& path);

// Default policy roster: optimal, greedy, periodic 3 and 5, and static
// thresholds at the 25th/50th/75th valuation percentiles.
std::vector<PolicySpec> default_policy_specs(const ValuationModel& valuation);

// Materializes specs; optimal entries share the supplied tables. Rejects
// duplicate policy ids.
std::vector<PolicyKind> build_policies(const std::vector<PolicySpec>& specs,
                                       std::shared_ptr<const PolicyTables> tables);

SimConfig make_sim_config(const ExperimentConfig& cfg,
                          std::shared_ptr<const PolicyTables> tables);

}  // namespace txpolicy
