#include "txpolicy/oracle.hpp"

#include <algorithm>
#include <vector>

#include "txpolicy/errors.hpp"

namespace txpolicy {

namespace {

// Memoized tree walk keyed by (battery, slots left). Battery is bounded by
// initial_battery + horizon since at most one unit arrives per slot. When a
// policy is supplied its decision replaces the max at every node.
class TreeWalk {
 public:
  TreeWalk(const OracleInstance& inst, const PolicyKind* policy)
      : inst_(inst), policy_(policy), good_(inst.channel.good_state_prob()) {
    stride_ = static_cast<std::size_t>(inst.initial_battery + inst.horizon + 2);
    memo_.assign(static_cast<std::size_t>(inst.horizon + 1) * stride_, -1.0);
  }

  double value(int battery, int slots_left) {
    if (slots_left == 0) return 0.0;
    double& slot = memo_[static_cast<std::size_t>(slots_left) * stride_ +
                         static_cast<std::size_t>(battery)];
    if (slot >= 0.0) return slot;
    slot = expand(battery, slots_left);
    return slot;
  }

 private:
  double expand(int battery, int slots_left) {
    const double pi = inst_.pi;
    if (battery == 0) {
      if (inst_.shutdown_on_empty) return 0.0;
      // forced discard; harvest may still revive the sensor
      return pi * value(1, slots_left - 1) + (1.0 - pi) * value(0, slots_left - 1);
    }

    const auto& support = inst_.valuation.support();
    const auto& probs = inst_.valuation.probabilities();
    double total = 0.0;
    for (std::size_t j = 0; j < support.size(); ++j) {
      const double u = inst_.valuation.utility().forward(support[j]);
      double transmit = 0.0;  // value of transmitting, averaged over the unseen state
      double discard = 0.0;
      double fixed = 0.0;  // value under the supplied policy, which may see the state
      for (int state = 0; state < 2; ++state) {
        const double w_state = state == 1 ? good_ : 1.0 - good_;
        const double p_s = state == 1 ? inst_.channel.alpha1() : inst_.channel.alpha0();
        double tx_state = 0.0;
        for (int succ = 0; succ < 2; ++succ) {
          const double w_succ = succ == 1 ? p_s : 1.0 - p_s;
          for (int h = 0; h < 2; ++h) {
            const double w_h = h == 1 ? pi : 1.0 - pi;
            tx_state += w_succ * w_h *
                        ((succ == 1 ? u : 0.0) + value(battery - 1 + h, slots_left - 1));
          }
        }
        double skip_state = 0.0;
        for (int h = 0; h < 2; ++h) {
          const double w_h = h == 1 ? pi : 1.0 - pi;
          skip_state += w_h * value(battery + h, slots_left - 1);
        }
        transmit += w_state * tx_state;
        discard += w_state * skip_state;
        if (policy_ != nullptr) {
          const DecisionContext ctx{static_cast<long>(inst_.horizon - slots_left), support[j],
                                    p_s, battery, slots_left};
          const bool tx = decide(*policy_, ctx) == Decision::kTransmit;
          fixed += w_state * (tx ? tx_state : skip_state);
        }
      }
      total += probs[j] * (policy_ == nullptr ? std::max(transmit, discard) : fixed);
    }
    return total;
  }

  const OracleInstance& inst_;
  const PolicyKind* policy_;
  double good_;
  std::size_t stride_ = 0;
  std::vector<double> memo_;
};

}  // namespace

void OracleInstance::validate() const {
  if (valuation.kind() != ValuationKind::kDiscrete)
    throw ValidationError("oracle: valuation must be discrete");
  if (!(pi >= 0.0 && pi <= 1.0)) throw ValidationError("oracle: pi must lie in [0, 1]");
  if (initial_battery < 0 || horizon < 0)
    throw ValidationError("oracle: battery and horizon must be nonnegative");
  if (valuation.support().size() > 4) throw TooLarge("oracle: more than 4 support points");
  if (initial_battery > 4) throw TooLarge("oracle: initial battery above 4");
  if (horizon > 6) throw TooLarge("oracle: horizon above 6");
}

double oracle_value(const OracleInstance& inst) {
  inst.validate();
  TreeWalk walk(inst, nullptr);
  return walk.value(inst.initial_battery, inst.horizon);
}

double oracle_policy_value(const OracleInstance& inst, const PolicyKind& policy) {
  inst.validate();
  TreeWalk walk(inst, &policy);
  return walk.value(inst.initial_battery, inst.horizon);
}

}  // namespace txpolicy
