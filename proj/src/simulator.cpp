#include "txpolicy/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>
#include <tuple>

#include "txpolicy/errors.hpp"

namespace txpolicy {

namespace {

constexpr double kZ95 = 1.959963984540054;

const PolicyTables* tables_of(const PolicyKind& p) {
  const auto* opt = std::get_if<OptimalPolicy>(&p);
  return opt ? opt->tables.get() : nullptr;
}

}  // namespace

void SimConfig::validate() const {
  dp.validate();
  if (horizon < 1) throw ValidationError("sim: horizon must be >= 1");
  if (replications < 1) throw ValidationError("sim: replications must be >= 1");
  if (threads < 0) throw ValidationError("sim: threads must be >= 0");
  if (initial_battery_levels.empty())
    throw ValidationError("sim: at least one initial battery level is required");
  for (int n0 : initial_battery_levels)
    if (n0 < 1) throw ValidationError("sim: initial battery levels must be >= 1");
  if (policies.empty()) throw ValidationError("sim: at least one policy is required");
  std::set<std::string> ids;
  for (const auto& p : policies) {
    if (!ids.insert(policy_id(p)).second)
      throw ValidationError("sim: duplicate policy id " + policy_id(p));
    if (!std::holds_alternative<OptimalPolicy>(p)) continue;
    const auto* t = tables_of(p);
    if (!t) throw ValidationError("sim: optimal policy has no tables");
    if (t->n_max() < horizon)
      throw ValidationError("sim: optimal policy tables cover n_max " +
                            std::to_string(t->n_max()) + " but horizon is " +
                            std::to_string(horizon));
  }
}

SlotResult run_slot(const SensorState& state, const PolicyKind& policy, const DpConfig& dp,
                    long slot_index, const SlotDraws& draws) {
  if (!state.alive) throw InvalidState("run_slot: sensor already shut down");
  if (state.remaining < 1) throw InvalidState("run_slot: no measurements remaining");

  SlotResult r;
  r.state = state;
  const double p_s = draws.channel_good ? dp.channel.alpha1() : dp.channel.alpha0();
  Decision d = Decision::kDiscard;
  if (state.battery >= 1)
    d = decide(policy, DecisionContext{slot_index, draws.valuation, p_s, state.battery,
                                       state.remaining});
  if (d == Decision::kTransmit) {
    r.attempted = true;
    r.state.battery -= 1;
    if (draws.success_coin < p_s) {
      r.succeeded = true;
      r.utility_delta = dp.valuation.utility().forward(draws.valuation);
    }
  }
  if (draws.harvest_coin < dp.pi) {
    r.harvested = true;
    r.state.battery += 1;
  }
  r.state.remaining -= 1;
  if (r.state.battery == 0 && dp.shutdown_on_empty) r.state.alive = false;
  return r;
}

std::vector<SlotDraws> draw_trace(const ValuationModel& valuation, const ChannelModel& channel,
                                  int horizon, RandomStream& rng) {
  std::vector<SlotDraws> trace(static_cast<std::size_t>(horizon));
  for (auto& s : trace) {
    s.valuation = valuation.sample(rng);
    s.channel_good = channel.sample_gain(rng) >= channel.rho_th();
    s.success_coin = rng.next_double();
    s.harvest_coin = rng.next_double();
  }
  return trace;
}

SimOutcome run_trace(const PolicyKind& policy, const DpConfig& dp, int horizon,
                     int initial_battery, int replication, const std::vector<SlotDraws>& trace) {
  SimOutcome out;
  out.policy = policy_id(policy);
  out.initial_battery = initial_battery;
  out.replication = replication;

  SensorState s{initial_battery, horizon, true};
  int last_alive = 0;
  for (long i = 0; i < horizon && s.alive; ++i) {
    const SlotResult r = run_slot(s, policy, dp, i, trace[static_cast<std::size_t>(i)]);
    out.total_utility += r.utility_delta;
    out.attempts += r.attempted ? 1 : 0;
    out.successes += r.succeeded ? 1 : 0;
    out.harvested += r.harvested ? 1 : 0;
    s = r.state;
    last_alive = static_cast<int>(i) + 1;
  }
  out.battery_lifetime = s.alive ? horizon : last_alive;
  out.final_battery = s.battery;
  return out;
}

std::vector<SimOutcome> run_campaign(const SimConfig& cfg) {
  cfg.validate();
  const int reps = cfg.replications;
  int workers = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, reps);

  std::vector<std::vector<SimOutcome>> per_rep(static_cast<std::size_t>(reps));
  std::atomic<int> next{0};
  const auto body = [&] {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= reps) return;
      RandomStream rng = RandomStream::derived(cfg.seed, static_cast<std::uint64_t>(r));
      const auto trace = draw_trace(cfg.dp.valuation, cfg.dp.channel, cfg.horizon, rng);
      auto& bucket = per_rep[static_cast<std::size_t>(r)];
      bucket.reserve(cfg.policies.size() * cfg.initial_battery_levels.size());
      for (const auto& p : cfg.policies)
        for (int n0 : cfg.initial_battery_levels)
          bucket.push_back(run_trace(p, cfg.dp, cfg.horizon, n0, r, trace));
    }
  };

  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }

  std::vector<SimOutcome> all;
  all.reserve(static_cast<std::size_t>(reps) * cfg.policies.size() *
              cfg.initial_battery_levels.size());
  for (auto& bucket : per_rep)
    for (auto& o : bucket) all.push_back(std::move(o));
  std::sort(all.begin(), all.end(), [](const SimOutcome& a, const SimOutcome& b) {
    return std::tie(a.policy, a.initial_battery, a.replication) <
           std::tie(b.policy, b.initial_battery, b.replication);
  });
  return all;
}

std::vector<Summary> summarize(const std::vector<SimOutcome>& outcomes) {
  if (outcomes.empty()) throw ValidationError("summarize: no outcomes");
  std::vector<const SimOutcome*> sorted;
  sorted.reserve(outcomes.size());
  for (const auto& o : outcomes) sorted.push_back(&o);
  std::sort(sorted.begin(), sorted.end(), [](const SimOutcome* a, const SimOutcome* b) {
    return std::tie(a->policy, a->initial_battery, a->replication) <
           std::tie(b->policy, b->initial_battery, b->replication);
  });

  std::vector<Summary> result;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j]->policy == sorted[i]->policy &&
           sorted[j]->initial_battery == sorted[i]->initial_battery)
      ++j;
    const double n = static_cast<double>(j - i);
    double mu = 0.0, ml = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      mu += sorted[k]->total_utility;
      ml += sorted[k]->battery_lifetime;
    }
    mu /= n;
    ml /= n;
    double vu = 0.0, vl = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      vu += (sorted[k]->total_utility - mu) * (sorted[k]->total_utility - mu);
      vl += (sorted[k]->battery_lifetime - ml) * (sorted[k]->battery_lifetime - ml);
    }
    Summary s;
    s.policy = sorted[i]->policy;
    s.initial_battery = sorted[i]->initial_battery;
    s.mean_utility = mu;
    s.mean_lifetime = ml;
    if (j - i > 1) {
      s.ci95_utility = kZ95 * std::sqrt(vu / (n - 1.0) / n);
      s.ci95_lifetime = kZ95 * std::sqrt(vl / (n - 1.0) / n);
    }
    result.push_back(std::move(s));
    i = j;
  }
  return result;
}

}  // namespace txpolicy
