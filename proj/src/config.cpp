#include "txpolicy/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "txpolicy/errors.hpp"

namespace txpolicy {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw ValidationError("config: unknown key " +
                            (path.empty() ? item.key() : path + "." + item.key()));
}

const json* find(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError("config: " + path + " must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ValidationError("config: " + path + " must be an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ValidationError("config: " + path + " must be a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError("config: " + path + " must be a string");
  return v.get<std::string>();
}

ValuationModel parse_valuation(const json& v) {
  if (!v.is_object()) throw ValidationError("config: valuation must be an object");
  const json* kind = find(v, "kind");
  if (!kind) throw ValidationError("config: valuation.kind is required");
  const std::string k = as_string(*kind, "valuation.kind");
  if (k == "exponential") {
    reject_unknown_keys(v, {"kind", "rate"}, "valuation");
    const json* rate = find(v, "rate");
    return ValuationModel::exponential(rate ? as_number(*rate, "valuation.rate") : 1.0);
  }
  if (k == "uniform") {
    reject_unknown_keys(v, {"kind", "lower", "upper"}, "valuation");
    const json* lower = find(v, "lower");
    const json* upper = find(v, "upper");
    if (!lower || !upper)
      throw ValidationError("config: valuation.lower and valuation.upper are required");
    return ValuationModel::uniform(as_number(*lower, "valuation.lower"),
                                   as_number(*upper, "valuation.upper"));
  }
  if (k == "discrete") {
    reject_unknown_keys(v, {"kind", "support", "probs"}, "valuation");
    const json* support = find(v, "support");
    const json* probs = find(v, "probs");
    if (!support || !probs || !support->is_array() || !probs->is_array())
      throw ValidationError("config: valuation.support and valuation.probs must be arrays");
    std::vector<double> s, p;
    for (const auto& x : *support) s.push_back(as_number(x, "valuation.support[]"));
    for (const auto& x : *probs) p.push_back(as_number(x, "valuation.probs[]"));
    return ValuationModel::discrete(std::move(s), std::move(p));
  }
  throw ValidationError("config: valuation.kind must be exponential, uniform or discrete");
}

ChannelModel parse_channel(const json& v) {
  if (!v.is_object()) throw ValidationError("config: channel must be an object");
  reject_unknown_keys(v, {"alpha0", "alpha1", "mu", "rho_th"}, "channel");
  double a0 = 0.2, a1 = 0.8, mu = 0.5, rho = 0.5;
  if (const json* x = find(v, "alpha0")) a0 = as_number(*x, "channel.alpha0");
  if (const json* x = find(v, "alpha1")) a1 = as_number(*x, "channel.alpha1");
  if (const json* x = find(v, "mu")) mu = as_number(*x, "channel.mu");
  if (const json* x = find(v, "rho_th")) rho = as_number(*x, "channel.rho_th");
  return ChannelModel(a0, a1, mu, rho);
}

PolicySpec parse_policy(const json& v, const std::string& path) {
  if (!v.is_object()) throw ValidationError("config: " + path + " must be an object");
  const json* kind = find(v, "kind");
  if (!kind) throw ValidationError("config: " + path + ".kind is required");
  const std::string k = as_string(*kind, path + ".kind");
  PolicySpec spec;
  if (k == "optimal") {
    reject_unknown_keys(v, {"kind", "csi"}, path);
    spec.choice = PolicyChoice::kOptimal;
    if (const json* csi = find(v, "csi")) {
      const std::string mode = as_string(*csi, path + ".csi");
      if (mode == "instantaneous")
        spec.csi = CsiMode::kInstantaneous;
      else if (mode == "averaged")
        spec.csi = CsiMode::kAveraged;
      else
        throw ValidationError("config: " + path + ".csi must be instantaneous or averaged");
    }
  } else if (k == "greedy") {
    reject_unknown_keys(v, {"kind"}, path);
    spec.choice = PolicyChoice::kGreedy;
  } else if (k == "periodic") {
    reject_unknown_keys(v, {"kind", "period"}, path);
    const json* period = find(v, "period");
    if (!period) throw ValidationError("config: " + path + ".period is required");
    spec.choice = PolicyChoice::kPeriodic;
    spec.period = as_int(*period, path + ".period");
    if (spec.period < 1) throw ValidationError("config: " + path + ".period must be >= 1");
  } else if (k == "static") {
    reject_unknown_keys(v, {"kind", "level"}, path);
    const json* level = find(v, "level");
    if (!level) throw ValidationError("config: " + path + ".level is required");
    spec.choice = PolicyChoice::kStatic;
    spec.level = as_number(*level, path + ".level");
    if (spec.level < 0.0) throw ValidationError("config: " + path + ".level must be >= 0");
  } else {
    throw ValidationError("config: " + path + ".kind must be optimal, greedy, periodic or static");
  }
  return spec;
}

}  // namespace

std::vector<PolicySpec> default_policy_specs(const ValuationModel& valuation) {
  std::vector<PolicySpec> specs;
  specs.push_back({PolicyChoice::kOptimal, CsiMode::kInstantaneous, 1, 0.0});
  specs.push_back({PolicyChoice::kGreedy, CsiMode::kInstantaneous, 1, 0.0});
  specs.push_back({PolicyChoice::kPeriodic, CsiMode::kInstantaneous, 3, 0.0});
  specs.push_back({PolicyChoice::kPeriodic, CsiMode::kInstantaneous, 5, 0.0});
  std::set<double> seen;
  for (double q : {0.25, 0.5, 0.75}) {
    const double level = valuation.quantile(q);
    if (seen.insert(level).second)
      specs.push_back({PolicyChoice::kStatic, CsiMode::kInstantaneous, 1, level});
  }
  return specs;
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.initial_battery_levels.resize(100);
  for (int i = 0; i < 100; ++i) cfg.initial_battery_levels[static_cast<std::size_t>(i)] = i + 1;
  cfg.policies = default_policy_specs(cfg.dp.valuation);
  return cfg;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("config: top level must be an object");
  reject_unknown_keys(root,
                      {"valuation", "channel", "pi", "n_max", "shutdown_on_empty", "horizon",
                       "initial_battery_levels", "replications", "seed", "threads", "policies",
                       "out"},
                      "");

  ExperimentConfig cfg;
  if (const json* v = find(root, "valuation")) cfg.dp.valuation = parse_valuation(*v);
  if (const json* v = find(root, "channel")) cfg.dp.channel = parse_channel(*v);
  if (const json* v = find(root, "pi")) {
    cfg.dp.pi = as_number(*v, "pi");
    if (!(cfg.dp.pi >= 0.0 && cfg.dp.pi <= 1.0))
      throw ValidationError("config: pi must lie in [0, 1]");
  }
  if (const json* v = find(root, "horizon")) {
    cfg.horizon = as_int(*v, "horizon");
    if (cfg.horizon < 1) throw ValidationError("config: horizon must be >= 1");
  }
  cfg.dp.n_max = cfg.horizon;
  if (const json* v = find(root, "n_max")) {
    cfg.dp.n_max = as_int(*v, "n_max");
  }
  cfg.dp.validate();
  if (const json* v = find(root, "shutdown_on_empty"))
    cfg.dp.shutdown_on_empty = as_bool(*v, "shutdown_on_empty");
  if (const json* v = find(root, "initial_battery_levels")) {
    if (!v->is_array() || v->empty())
      throw ValidationError("config: initial_battery_levels must be a nonempty array");
    for (const auto& x : *v) {
      const int n0 = as_int(x, "initial_battery_levels[]");
      if (n0 < 1) throw ValidationError("config: initial_battery_levels entries must be >= 1");
      cfg.initial_battery_levels.push_back(n0);
    }
  } else {
    cfg.initial_battery_levels.resize(100);
    for (int i = 0; i < 100; ++i) cfg.initial_battery_levels[static_cast<std::size_t>(i)] = i + 1;
  }
  if (const json* v = find(root, "replications")) {
    cfg.replications = as_int(*v, "replications");
    if (cfg.replications < 1) throw ValidationError("config: replications must be >= 1");
  }
  if (const json* v = find(root, "seed")) {
    if (!v->is_number_unsigned() && !v->is_number_integer())
      throw ValidationError("config: seed must be an integer");
    if (v->is_number_integer() && v->get<long long>() < 0)
      throw ValidationError("config: seed must be nonnegative");
    cfg.seed = v->get<std::uint64_t>();
  }
  if (const json* v = find(root, "threads")) {
    cfg.threads = as_int(*v, "threads");
    if (cfg.threads < 0) throw ValidationError("config: threads must be >= 0");
  }
  if (const json* v = find(root, "policies")) {
    if (!v->is_array() || v->empty())
      throw ValidationError("config: policies must be a nonempty array");
    for (std::size_t i = 0; i < v->size(); ++i)
      cfg.policies.push_back(parse_policy((*v)[i], "policies[" + std::to_string(i) + "]"));
  } else {
    cfg.policies = default_policy_specs(cfg.dp.valuation);
  }
  if (const json* v = find(root, "out")) cfg.out = as_string(*v, "out");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<PolicyKind> build_policies(const std::vector<PolicySpec>& specs,
                                       std::shared_ptr<const PolicyTables> tables) {
  std::vector<PolicyKind> out;
  std::set<std::string> ids;
  for (const auto& spec : specs) {
    PolicyKind p;
    switch (spec.choice) {
      case PolicyChoice::kOptimal:
        if (!tables) throw ValidationError("policies: optimal requires computed tables");
        p = OptimalPolicy{tables, spec.csi};
        break;
      case PolicyChoice::kGreedy:
        p = GreedyPolicy{};
        break;
      case PolicyChoice::kPeriodic:
        p = PeriodicPolicy{spec.period};
        break;
      case PolicyChoice::kStatic:
        p = StaticThresholdPolicy{spec.level};
        break;
    }
    if (!ids.insert(policy_id(p)).second)
      throw ValidationError("policies: duplicate id " + policy_id(p));
    out.push_back(std::move(p));
  }
  return out;
}

SimConfig make_sim_config(const ExperimentConfig& cfg,
                          std::shared_ptr<const PolicyTables> tables) {
  SimConfig sim;
  sim.dp = cfg.dp;
  sim.horizon = cfg.horizon;
  sim.initial_battery_levels = cfg.initial_battery_levels;
  sim.replications = cfg.replications;
  sim.seed = cfg.seed;
  sim.threads = cfg.threads;
  sim.policies = build_policies(cfg.policies, std::move(tables));
  sim.validate();
  return sim;
}

}  // namespace txpolicy
