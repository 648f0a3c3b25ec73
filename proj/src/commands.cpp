#include "txpolicy/commands.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

#include <CLI11.hpp>

#include "txpolicy/csv.hpp"
#include "txpolicy/errors.hpp"
#include "txpolicy/oracle.hpp"

namespace txpolicy {

namespace {

bool wants_tables(const std::vector<PolicySpec>& specs) {
  for (const auto& s : specs)
    if (s.choice == PolicyChoice::kOptimal) return true;
  return false;
}

std::string threshold_cell(const PolicyTables& tables, int battery, int remaining, double p_s) {
  if (!(p_s > 0.0)) return "inf";
  return format_double(tables.threshold_for(battery, remaining, p_s));
}

std::vector<SimOutcome> campaign_for(const ExperimentConfig& cfg) {
  std::shared_ptr<const PolicyTables> tables;
  if (wants_tables(cfg.policies))
    tables = std::make_shared<const PolicyTables>(compute_tables(cfg.dp));
  return run_campaign(make_sim_config(cfg, tables));
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int cmd_compute_thresholds(const ExperimentConfig& cfg, const std::string& out_path) {
  const PolicyTables tables = compute_tables(cfg.dp);
  const double eps = tables.expected_success();
  Table t;
  t.header = {"n", "N", "gap", "threshold_avg", "threshold_good", "threshold_bad", "ev"};
  for (int n = 0; n <= tables.n_max(); ++n) {
    for (int N = 0; N <= n; ++N) {
      std::vector<std::string> row(7);
      row[0] = std::to_string(n);
      row[1] = std::to_string(N);
      if (N >= 1 && n >= 1) {
        row[2] = format_double(tables.gap(N, n));
        row[3] = threshold_cell(tables, N, n, eps);
        row[4] = threshold_cell(tables, N, n, cfg.dp.channel.alpha1());
        row[5] = threshold_cell(tables, N, n, cfg.dp.channel.alpha0());
      } else {
        row[2] = row[3] = row[4] = row[5] = "inf";  // no decision without battery or slots
      }
      row[6] = format_double(tables.ev(N, n));
      t.rows.push_back(std::move(row));
    }
  }
  write_csv(t, out_path);
  return 0;
}

int cmd_simulate(const ExperimentConfig& cfg, const std::string& out_path) {
  const auto outcomes = campaign_for(cfg);
  Table t;
  t.header = {"policy", "N0", "replication", "total_utility", "battery_lifetime", "attempts",
              "successes"};
  for (const auto& o : outcomes) {
    t.rows.push_back({o.policy, std::to_string(o.initial_battery), std::to_string(o.replication),
                      format_double(o.total_utility), std::to_string(o.battery_lifetime),
                      std::to_string(o.attempts), std::to_string(o.successes)});
  }
  write_csv(t, out_path);
  return 0;
}

int cmd_compare(const ExperimentConfig& cfg, const std::string& out_path) {
  const auto summary = summarize(campaign_for(cfg));
  if (ends_with(out_path, ".json")) {
    write_summary_json(summary, out_path);
    return 0;
  }
  Table t;
  t.header = {"policy", "N0", "mean_utility", "ci95_utility", "mean_lifetime", "ci95_lifetime"};
  for (const auto& s : summary) {
    t.rows.push_back({s.policy, std::to_string(s.initial_battery), format_double(s.mean_utility),
                      format_double(s.ci95_utility), format_double(s.mean_lifetime),
                      format_double(s.ci95_lifetime)});
  }
  write_csv(t, out_path);
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg) {
  std::vector<ValuationModel> valuations;
  if (cfg.dp.valuation.kind() == ValuationKind::kDiscrete) {
    valuations.push_back(cfg.dp.valuation);
  } else {
    valuations.push_back(ValuationModel::discrete({0.5, 1.5}, {0.5, 0.5}));
    valuations.push_back(ValuationModel::discrete({0.5, 1.0, 2.0}, {0.3, 0.4, 0.3}));
    valuations.push_back(ValuationModel::discrete({0.2, 0.8, 1.3, 2.2}, {0.25, 0.25, 0.25, 0.25}));
  }
  constexpr double kTol = 1e-9;
  bool all_ok = true;
  std::printf("%-10s %5s %3s %3s %16s %16s %10s %s\n", "valuation", "pi", "N0", "n", "table",
              "oracle", "delta", "status");
  for (const auto& val : valuations) {
    DpConfig dp{val, cfg.dp.channel, cfg.dp.pi, 6, cfg.dp.shutdown_on_empty};
    const PolicyTables tables = compute_tables(dp);
    const std::string label = "discrete" + std::to_string(val.support().size());
    for (int n0 = 1; n0 <= 3; ++n0) {
      for (int n = 2; n <= 6; ++n) {
        OracleInstance inst{val, cfg.dp.channel, cfg.dp.pi, n0, n, cfg.dp.shutdown_on_empty};
        const double exact = oracle_value(inst);
        const double table = tables.ev(n0, n);
        const double delta = std::abs(exact - table);
        const bool ok = delta <= kTol;
        all_ok = all_ok && ok;
        std::printf("%-10s %5.2f %3d %3d %16.12f %16.12f %10.2e %s\n", label.c_str(), cfg.dp.pi,
                    n0, n, table, exact, delta, ok ? "ok" : "MISMATCH");
      }
    }
  }
  std::printf("%s\n", all_ok ? "verify: all table values match the oracle"
                             : "verify: table/oracle mismatch detected");
  return all_ok ? 0 : 3;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"transmission threshold engine and Monte Carlo simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int threads = -1;

  const auto add_common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--config", config_path, "JSON config file (defaults apply when omitted)");
    if (with_out) sub->add_option("--out", out_path, "output file path");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--threads", threads, "worker threads, 0 = auto")
        ->envname("TXPOLICY_THREADS");
  };

  CLI::App* thresholds =
      app.add_subcommand("compute-thresholds", "emit the threshold/value table as CSV");
  add_common(thresholds, true);
  CLI::App* simulate = app.add_subcommand("simulate", "emit per-replication outcomes as CSV");
  add_common(simulate, true);
  CLI::App* compare =
      app.add_subcommand("compare", "emit per-policy summary as CSV (or JSON by extension)");
  add_common(compare, true);
  CLI::App* verify = app.add_subcommand("verify", "check table values against the brute-force oracle");
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  CLI::App* active = app.get_subcommands().front();

  ExperimentConfig cfg;
  try {
    cfg = config_path.empty() ? default_config() : load_config(config_path);
    if (active->count("--seed") > 0) cfg.seed = seed;
    if (threads >= 0) cfg.threads = threads;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (active == thresholds)
      return cmd_compute_thresholds(cfg, out_path.empty() ? cfg.out.value_or("thresholds.csv")
                                                          : out_path);
    if (active == simulate)
      return cmd_simulate(cfg, out_path.empty() ? cfg.out.value_or("results.csv") : out_path);
    if (active == compare)
      return cmd_compare(cfg, out_path.empty() ? cfg.out.value_or("summary.csv") : out_path);
    return cmd_verify(cfg);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace txpolicy
