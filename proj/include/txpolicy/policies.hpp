#pragma once

#include <memory>
#include <string>
#include <variant>

#include "txpolicy/dp_engine.hpp"

namespace txpolicy {

enum class Decision { kTransmit, kDiscard };

// Channel knowledge used by the optimal policy at decision time: the observed
// per-slot success probability, or its long-run average.
enum class CsiMode { kInstantaneous, kAveraged };

struct DecisionContext {
  long slot_index = 0;  // 0-based position in the trace
  double valuation = 0.0;
  double success_prob = 0.0;  // alpha1 or alpha0 for the observed state
  int battery = 0;
  int remaining = 0;
};

struct OptimalPolicy {
  std::shared_ptr<const PolicyTables> tables;
  CsiMode csi = CsiMode::kInstantaneous;
};

struct GreedyPolicy {};

struct PeriodicPolicy {
  int period = 1;
};

struct StaticThresholdPolicy {
  double level = 0.0;
};

using PolicyKind = std::variant<OptimalPolicy, GreedyPolicy, PeriodicPolicy, StaticThresholdPolicy>;

// Pure decision function; identical context always yields the same decision.
Decision decide(const PolicyKind& policy, const DecisionContext& ctx);

std::string policy_id(const PolicyKind& policy);

}  // namespace txpolicy
