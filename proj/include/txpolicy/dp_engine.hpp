#pragma once

#include <cstddef>
#include <vector>

#include "txpolicy/channel.hpp"
#include "txpolicy/valuation.hpp"

namespace txpolicy {

struct DpConfig {
  ValuationModel valuation;
  ChannelModel channel{0.2, 0.8, 0.5, 0.5};
  double pi = 0.0;  // per-slot harvest probability
  int n_max = 1000;
  bool shutdown_on_empty = true;

  void validate() const;
};

// Expected-value table EV(battery, remaining) over the triangle
// 0 <= battery <= remaining <= n_max. The always-transmit region
// battery > remaining is served in closed form and never stored.
// Immutable once built; safe for concurrent reads.
class PolicyTables {
 public:
  double ev(int battery, int remaining) const;

  // one-step value gap of holding a battery unit; needs battery >= 1, remaining >= 1
  double gap(int battery, int remaining) const;

  // transmit iff valuation >= threshold_for(...); 0 in the always-transmit region
  double threshold_for(int battery, int remaining, double p_s) const;

  int n_max() const { return cfg_.n_max; }
  const DpConfig& config() const { return cfg_; }
  double expected_success() const { return eps_; }
  double mean_utility() const { return eu_; }

 private:
  friend PolicyTables compute_tables(const DpConfig& cfg);

  PolicyTables(DpConfig cfg, double eps, double eu)
      : cfg_(std::move(cfg)), eps_(eps), eu_(eu) {}

  static std::size_t cell(int battery, int remaining) {
    return static_cast<std::size_t>(remaining) * (remaining + 1) / 2 + battery;
  }

  DpConfig cfg_;
  double eps_;
  double eu_;
  std::vector<double> table_;
};

// Backward induction over the full triangle. Single-threaded, deterministic.
PolicyTables compute_tables(const DpConfig& cfg);

// Reference formulas for the threshold on the last battery unit with two or
// three slots remaining, identity utility. The two-slot forms are exact; the
// three-slot forms reproduce published algebra verbatim and are meant to be
// compared against the table, not trusted.
namespace closed_form {

double exponential_two_slots(double rate, double pi, double expected_ps, double p_s);
double exponential_three_slots(double rate, double pi, double expected_ps, double p_s,
                               double inner_threshold);
double uniform_two_slots(double lower, double upper, double pi, double expected_ps, double p_s);
double uniform_three_slots(double lower, double upper, double pi, double expected_ps, double p_s);

}  // namespace closed_form

}  // namespace txpolicy
