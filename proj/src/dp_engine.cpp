#include "txpolicy/dp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "txpolicy/errors.hpp"

namespace txpolicy {

void DpConfig::validate() const {
  if (!(pi >= 0.0 && pi <= 1.0)) throw ValidationError("dp: pi must lie in [0, 1]");
  if (n_max < 1) throw ValidationError("dp: n_max must be >= 1");
  if (n_max > 20000) throw ValidationError("dp: n_max above 20000 would need a multi-GB table");
}

double PolicyTables::ev(int battery, int remaining) const {
  if (battery < 0 || remaining < 0 || remaining > cfg_.n_max)
    throw OutOfRange("ev: index outside the computed table");
  if (battery > remaining) return static_cast<double>(remaining) * eu_ * eps_;
  return table_[cell(battery, remaining)];
}

double PolicyTables::gap(int battery, int remaining) const {
  if (battery < 1 || remaining < 1 || remaining > cfg_.n_max)
    throw OutOfRange("gap: needs battery >= 1 and 1 <= remaining <= n_max");
  const double up = ev(battery + 1, remaining - 1);
  const double mid = ev(battery, remaining - 1);
  const double down = ev(battery - 1, remaining - 1);
  return cfg_.pi * (up - mid) + (1.0 - cfg_.pi) * (mid - down);
}

double PolicyTables::threshold_for(int battery, int remaining, double p_s) const {
  if (battery < 1 || remaining < 1 || remaining > cfg_.n_max)
    throw OutOfRange("threshold_for: needs battery >= 1 and 1 <= remaining <= n_max");
  if (!(p_s > 0.0 && p_s <= 1.0))
    throw ValidationError("threshold_for: p_s must lie in (0, 1]");
  if (battery >= remaining) return 0.0;
  const double g = std::max(gap(battery, remaining), 0.0);
  return cfg_.valuation.utility().inverse(g / p_s);
}

PolicyTables compute_tables(const DpConfig& cfg) {
  cfg.validate();
  const double eps = cfg.channel.expected_success_prob();
  const double eu = cfg.valuation.mean_utility();
  PolicyTables t(cfg, eps, eu);
  const int n_max = cfg.n_max;
  t.table_.assign(PolicyTables::cell(0, n_max) + static_cast<std::size_t>(n_max) + 1, 0.0);
  if (eps <= 0.0) return t;  // transmissions can never succeed; every value is 0

  const auto& val = cfg.valuation;
  const auto& u = val.utility();
  const double pi = cfg.pi;

  // value in the previous column, resolving the unstored battery > remaining region
  const auto prev = [&](int battery, int remaining) {
    if (battery > remaining) return static_cast<double>(remaining) * eu * eps;
    return t.table_[PolicyTables::cell(battery, remaining)];
  };

  for (int n = 1; n <= n_max; ++n) {
    if (!cfg.shutdown_on_empty)
      t.table_[PolicyTables::cell(0, n)] = pi * prev(1, n - 1);
    for (int N = 1; N < n; ++N) {
      const double up = prev(N + 1, n - 1);
      const double mid = prev(N, n - 1);
      const double down = prev(N - 1, n - 1);
      const double g = std::max(pi * (up - mid) + (1.0 - pi) * (mid - down), 0.0);
      const double a = u.inverse(g / eps);
      const double p_tx = val.prob_ge(a);
      t.table_[PolicyTables::cell(N, n)] = eps * val.tail_utility(a) +
                                           p_tx * (pi * mid + (1.0 - pi) * down) +
                                           (1.0 - p_tx) * (pi * up + (1.0 - pi) * mid);
    }
    t.table_[PolicyTables::cell(n, n)] = static_cast<double>(n) * eu * eps;
  }
  return t;
}

namespace closed_form {

double exponential_two_slots(double rate, double pi, double expected_ps, double p_s) {
  return (1.0 - pi) * expected_ps / (rate * p_s);
}

double exponential_three_slots(double rate, double pi, double expected_ps, double p_s,
                               double inner_threshold) {
  const double a = inner_threshold;
  const double first =
      (3.0 * pi - pi * pi + std::exp(-rate * a) * (pi - 1.0)) * expected_ps / (rate * p_s);
  const double second =
      (1.0 - 2.0 * pi) * (1.0 + std::exp(-2.0 * rate * a) * (rate * a + 1.0)) / p_s;
  return first + second;
}

double uniform_two_slots(double lower, double upper, double pi, double expected_ps, double p_s) {
  return (1.0 - pi) * (upper + lower) * expected_ps / (2.0 * p_s);
}

double uniform_three_slots(double lower, double upper, double pi, double expected_ps, double p_s) {
  const double first = (-4.0 * pi * pi + 5.0 * pi + 1.0) * (upper + lower) * expected_ps / (4.0 * p_s);
  const double second = (3.0 * upper * upper + 2.0 * upper * lower + lower * lower) *
                        (1.0 - 2.0 * pi) * expected_ps / (16.0 * (upper - lower) * p_s);
  return first + second;
}

}  // namespace closed_form

}  // namespace txpolicy
