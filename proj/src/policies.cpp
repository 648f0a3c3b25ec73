#include "txpolicy/policies.hpp"

#include <cstdio>

#include "txpolicy/errors.hpp"

namespace txpolicy {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

}  // namespace

Decision decide(const PolicyKind& policy, const DecisionContext& ctx) {
  if (ctx.battery < 1) throw InvalidState("decide: called with an empty battery");
  return std::visit(
      Overload{
          [&](const OptimalPolicy& p) {
            if (!p.tables) throw ValidationError("optimal policy: missing tables");
            const double p_s =
                p.csi == CsiMode::kAveraged ? p.tables->expected_success() : ctx.success_prob;
            const double a = p.tables->threshold_for(ctx.battery, ctx.remaining, p_s);
            return ctx.valuation >= a ? Decision::kTransmit : Decision::kDiscard;
          },
          [&](const GreedyPolicy&) { return Decision::kTransmit; },
          [&](const PeriodicPolicy& p) {
            if (p.period < 1) throw ValidationError("periodic policy: period must be >= 1");
            return ctx.slot_index % p.period == p.period - 1 ? Decision::kTransmit
                                                             : Decision::kDiscard;
          },
          [&](const StaticThresholdPolicy& p) {
            if (p.level < 0.0) throw ValidationError("static policy: level must be >= 0");
            return ctx.valuation >= p.level ? Decision::kTransmit : Decision::kDiscard;
          },
      },
      policy);
}

std::string policy_id(const PolicyKind& policy) {
  return std::visit(
      Overload{
          [](const OptimalPolicy& p) {
            return std::string(p.csi == CsiMode::kAveraged ? "optimal_avg" : "optimal");
          },
          [](const GreedyPolicy&) { return std::string("greedy"); },
          [](const PeriodicPolicy& p) { return "periodic_" + std::to_string(p.period); },
          [](const StaticThresholdPolicy& p) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "static_%.6g", p.level);
            return std::string(buf);
          },
      },
      policy);
}

}  // namespace txpolicy
