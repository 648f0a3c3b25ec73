#pragma once

#include "txpolicy/policies.hpp"

namespace txpolicy {

// Small instance for exhaustive expectation: discrete valuation with at most
// 4 atoms, a two-point channel marginal, at most 4 starting battery units and
// 6 slots. Everything beyond these bounds is rejected as TooLarge.
struct OracleInstance {
  ValuationModel valuation;
  ChannelModel channel{0.2, 0.8, 0.5, 0.5};
  double pi = 0.0;
  int initial_battery = 1;
  int horizon = 1;
  bool shutdown_on_empty = true;

  void validate() const;
};

// Exact optimal expected utility: full expansion of the decision tree over
// valuation atoms, channel states, success and harvest outcomes, maximizing
// the transmit choice at each information node (valuation observed, channel
// state not). Independent of the backward-induction engine by construction.
double oracle_value(const OracleInstance& inst);

// Exact expected utility of a fixed policy on the same tree.
double oracle_policy_value(const OracleInstance& inst, const PolicyKind& policy);

}  // namespace txpolicy
